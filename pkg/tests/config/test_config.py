import copy, json
from pathlib import Path
import pytest
from config.config_manager import ConfigManager
from config.config_validator import ConfigValidator
from config.exceptions import ConfigFileNotFoundError, ConfigParseError, ConfigValidationError
from config.experiment_config import ExperimentConfig
from core.geometry.profile_kind import ProfileKind
from core.nonlinearity.reaction_kind import ReactionKind

CONFIG_DIR = Path(__file__).resolve().parents[2] / "config"

@pytest.fixture
def raw_config():
    with open(CONFIG_DIR / "config.json") as file:
        return json.load(file)

class TestConfigValidator:
    def test_shipped_configs_are_valid(self):
        validator = ConfigValidator()
        for name in ("config.json", "straight_channel.json", "tilted_channel.json"):
            with open(CONFIG_DIR / name) as file:
                validator.validate(json.load(file))

    def test_missing_sections(self, raw_config):
        del raw_config["sweep"]
        del raw_config["logging"]
        with pytest.raises(ConfigValidationError) as excinfo:
            ConfigValidator().validate(raw_config)
        assert {"sweep", "logging", "sweep.eps_list", "logging.log_level"} <= set(excinfo.value.missing_fields)

    @pytest.mark.parametrize("section, key, value, field", [
        ("operator", "alpha", 0.5, "operator.alpha"),
        ("operator", "mu", -1.0, "operator.mu"),
        ("sweep", "eps_list", [0.1, 0.2], "sweep.eps_list"),
        ("sweep", "eps_list", [1.5], "sweep.eps_list"),
        ("discretization", "nx", 4, "discretization.nx"),
        ("dynamics", "dt", 0.3, "dynamics.dt"),
        ("dynamics", "scheme", "rk4", "dynamics.scheme"),
        ("manifold", "m", 0, "manifold.m"),
        ("cutoff", "R", -2.0, "cutoff.R"),
        ("logging", "log_to_file", "yes", "logging.log_to_file"),
        ("output", "format", "xml", "output.format"),
    ])
    def test_invalid_values(self, raw_config, section, key, value, field):
        broken = copy.deepcopy(raw_config)
        broken[section][key] = value
        with pytest.raises(ConfigValidationError) as excinfo:
            ConfigValidator().validate(broken)
        assert field in excinfo.value.invalid_fields

    def test_unknown_profile_kind(self, raw_config):
        raw_config["geometry"]["profile"]["kind"] = "zigzag"
        with pytest.raises(ConfigValidationError) as excinfo:
            ConfigValidator().validate(raw_config)
        assert "geometry.profile.kind" in excinfo.value.invalid_fields

class TestConfigManager:
    def test_builds_the_experiment_config(self):
        manager = ConfigManager(str(CONFIG_DIR / "config.json"), ConfigValidator())
        config = manager.build_experiment_config()
        assert config.profile_kind == ProfileKind.SINE
        assert config.profile_params == (1.0, 0.3)
        assert config.reaction_kind == ReactionKind.CUBIC
        assert config.R is None
        assert config.eps_list == tuple(sorted(config.eps_list, reverse=True))

    def test_tilted_channel_carries_its_threshold(self):
        config = ConfigManager(str(CONFIG_DIR / "tilted_channel.json"), ConfigValidator()).build_experiment_config()
        assert config.tilt == pytest.approx(0.5)
        assert config.M == pytest.approx(2.5)

    def test_straight_channel(self):
        config = ConfigManager(str(CONFIG_DIR / "straight_channel.json"), ConfigValidator()).build_experiment_config()
        assert config.is_straight

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigFileNotFoundError):
            ConfigManager(str(tmp_path / "absent.json"), ConfigValidator())

    def test_unparsable_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(ConfigParseError):
            ConfigManager(str(path), ConfigValidator())

class TestExperimentConfig:
    @pytest.mark.parametrize("kwargs, field", [
        ({"eps_list": (0.1, 0.2)}, "sweep.eps_list"),
        ({"eps_list": ()}, "sweep.eps_list"),
        ({"alpha": 0.0}, "operator.alpha"),
        ({"nx": 7}, "discretization.nx"),
        ({"nz": 3}, "discretization.nz"),
        ({"n1d": 8}, "discretization.n1d"),
        ({"m": 4}, "manifold.m"),
        ({"n_modes": 3}, "dynamics.n_modes"),
        ({"threads": 0}, "sweep.threads"),
        ({"window": 9}, "shadowing.window"),
    ])
    def test_invalid_fields(self, kwargs, field):
        with pytest.raises(ConfigValidationError) as excinfo:
            ExperimentConfig(**kwargs)
        assert field in excinfo.value.invalid_fields

    def test_auto_dimension_is_allowed(self):
        assert ExperimentConfig(m=None).m is None
