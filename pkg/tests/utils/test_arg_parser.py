import json
from pathlib import Path
import pandas as pd
import pytest
from experiments.claim_check import at_most
from main import apply_overrides, main
from config.experiment_config import ExperimentConfig
from utils.arg_parser import parse_and_validate_console_args
from utils.constants import EXIT_ERROR
from utils.report_writer import emit_report, load_report

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"

@pytest.fixture
def config_file(tmp_path):
    with open(CONFIG_DIR / "straight_channel.json") as file:
        raw = json.load(file)
    raw["logging"]["log_to_file"] = False
    path = tmp_path / "config.json"
    path.write_text(json.dumps(raw))
    return str(path)

@pytest.fixture
def stored_report(tmp_path):
    table = pd.DataFrame({"epsilon": [0.5, 0.25], "status": ["ok", "ok"], "reason": ["", ""], "tau": [1e-14, 1e-14]})
    return emit_report(table, "json", str(tmp_path / "stored.json"), experiment="resolvent-rate", claims=[at_most("tau at numerical floor", 1e-14, 1e-10)])

class TestArgParser:
    def test_valid_arguments(self, config_file):
        args = parse_and_validate_console_args(["resolvent-rate", "--config", config_file, "--eps", "0.5", "0.25", "--seed", "3", "--threads", "2"])
        assert args.subcommand == "resolvent-rate"
        assert args.eps == [0.5, 0.25]
        assert args.seed == 3
        assert not args.profile

    @pytest.mark.parametrize("subcommand", ["theorem22", "cutoff"])
    def test_attractor_and_cutoff_subcommands(self, config_file, subcommand):
        args = parse_and_validate_console_args([subcommand, "--config", config_file])
        assert args.subcommand == subcommand

    def test_unknown_subcommand(self, config_file):
        with pytest.raises(RuntimeError):
            parse_and_validate_console_args(["bifurcation", "--config", config_file])

    def test_missing_config(self, tmp_path):
        with pytest.raises(RuntimeError):
            parse_and_validate_console_args(["spectrum", "--config", str(tmp_path / "absent.json")])

    @pytest.mark.parametrize("eps", [["0.25", "0.5"], ["1.5"], ["0.5", "0.5"]])
    def test_bad_epsilon_list(self, config_file, eps):
        with pytest.raises(RuntimeError):
            parse_and_validate_console_args(["spectrum", "--config", config_file, "--eps", *eps])

    def test_report_needs_input(self, config_file):
        with pytest.raises(RuntimeError):
            parse_and_validate_console_args(["report", "--config", config_file])

    def test_bad_thread_count(self, config_file):
        with pytest.raises(RuntimeError):
            parse_and_validate_console_args(["spectrum", "--config", config_file, "--threads", "0"])

class TestOverrides:
    def test_cli_flags_replace_config_values(self, config_file):
        args = parse_and_validate_console_args(["spectrum", "--config", config_file, "--eps", "0.5", "0.25", "--seed", "9", "--format", "json"])
        config = apply_overrides(ExperimentConfig(), args)
        assert config.eps_list == (0.5, 0.25)
        assert config.seed == 9
        assert config.output_format.value == "json"

class TestMain:
    def test_report_subcommand_re_emits_stored_claims(self, config_file, stored_report, tmp_path):
        out = tmp_path / "again.json"
        code = main(["report", "--config", config_file, "--input", stored_report, "--out", str(out), "--format", "json"])
        assert code == 0
        loaded = load_report(str(out))
        assert loaded.claims[0]["name"] == "tau at numerical floor"
        assert len(loaded.table) == 2

    def test_invalid_arguments_exit_with_error(self, config_file):
        assert main(["report", "--config", config_file]) == EXIT_ERROR
