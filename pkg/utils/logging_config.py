import logging, os
from logging.handlers import RotatingFileHandler
from typing import List, Optional, Union

# sweep rows run on worker threads, so the thread name tells the epsilon rows apart
LOG_FORMAT = '%(asctime)s [%(threadName)s] %(name)s %(levelname)s: %(message)s'
LOG_DIR_ENV = "THIN_CHANNEL_LOG_DIR"
DEFAULT_LOG_DIR = "logs"
DEFAULT_RUN_NAME = "thin_channel_lab"
ROTATION_BYTES = 5_000_000
ROTATION_BACKUPS = 5

def resolve_log_level(level: Union[int, str]) -> int:
    """Accepts logging constants or their names in any case."""
    if isinstance(level, int):
        return level

    resolved = logging.getLevelName(str(level).upper())
    if not isinstance(resolved, int):
        raise ValueError(f"Invalid log level: '{level}'. Available log levels are: DEBUG, INFO, WARNING, ERROR, CRITICAL")
    return resolved

def log_file_path(run_name: Optional[str] = None) -> str:
    log_dir = os.getenv(LOG_DIR_ENV, DEFAULT_LOG_DIR)
    return os.path.join(log_dir, f"{run_name or DEFAULT_RUN_NAME}.log")

def setup_logging(log_level: Union[int, str], log_to_file: bool = False, run_name: Optional[str] = None) -> Optional[str]:
    """
    Console logging for every run; with `log_to_file` the same records also go to a rotating
    file named after the run, under $THIN_CHANNEL_LOG_DIR (default `logs/`).

    Returns:
        The log file path, or None when only the console is used.
    """
    level = resolve_log_level(log_level)
    formatter = logging.Formatter(LOG_FORMAT)
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    path = None

    if log_to_file:
        path = log_file_path(run_name)
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        handlers.append(RotatingFileHandler(path, maxBytes=ROTATION_BYTES, backupCount=ROTATION_BACKUPS))

    for handler in handlers:
        handler.setFormatter(formatter)

    logging.basicConfig(level=level, handlers=handlers, force=True)
    logging.info(f"Logging at {logging.getLevelName(level)}" + (f", run log in {path}" if path else ""))
    return path
