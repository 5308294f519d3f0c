import logging
from logging.handlers import RotatingFileHandler
import pytest
from utils.logging_config import LOG_DIR_ENV, log_file_path, resolve_log_level, setup_logging

@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield root
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers = handlers
    root.setLevel(level)

class TestLogLevel:
    @pytest.mark.parametrize("level, expected", [("debug", logging.DEBUG), ("INFO", logging.INFO), (logging.WARNING, logging.WARNING)])
    def test_names_and_constants(self, level, expected):
        assert resolve_log_level(level) == expected

    def test_unknown_level_lists_valid_levels(self):
        with pytest.raises(ValueError, match="Available log levels"):
            resolve_log_level("chatty")

class TestSetupLogging:
    def test_file_path_follows_the_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(LOG_DIR_ENV, str(tmp_path))
        assert log_file_path("spectrum_run") == str(tmp_path / "spectrum_run.log")
        assert log_file_path() == str(tmp_path / "thin_channel_lab.log")

    def test_console_only(self, restore_root_logger):
        assert setup_logging("WARNING") is None
        assert restore_root_logger.level == logging.WARNING
        assert not any(isinstance(handler, RotatingFileHandler) for handler in restore_root_logger.handlers)

    def test_rotating_file_per_run(self, tmp_path, monkeypatch, restore_root_logger):
        monkeypatch.setenv(LOG_DIR_ENV, str(tmp_path / "runs"))
        path = setup_logging("INFO", log_to_file=True, run_name="cutoff")
        logging.getLogger("CutoffExperiment").info("commutation checked")
        for handler in restore_root_logger.handlers:
            handler.flush()

        assert path == str(tmp_path / "runs" / "cutoff.log")
        content = (tmp_path / "runs" / "cutoff.log").read_text()
        assert "CutoffExperiment INFO: commutation checked" in content
        assert "[MainThread]" in content
