import json, os, logging
from typing import Optional, Tuple
from core.geometry.profile_kind import ProfileKind
from core.nonlinearity.reaction_kind import ReactionKind
from core.semiflow.scheme_type import SchemeType
from utils.report_format import ReportFormat
from .experiment_config import ExperimentConfig, SCHEMA_VERSION
from .exceptions import ConfigFileNotFoundError, ConfigParseError

class ConfigManager:
    def __init__(self, config_file, config_validator):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.config_file = config_file
        self.config_validator = config_validator
        self.config = None
        self.load_config()

    def load_config(self):
        if not os.path.exists(self.config_file):
            self.logger.error(f"Config file {self.config_file} does not exist.")
            raise ConfigFileNotFoundError(self.config_file)

        with open(self.config_file, 'r') as file:
            try:
                self.config = json.load(file)
            except json.JSONDecodeError as e:
                self.logger.error(f"Failed to parse config file {self.config_file}: {e}")
                raise ConfigParseError(self.config_file, e)

        self.config_validator.validate(self.config)

    def get(self, key, default=None):
        return self.config.get(key, default)

    def get_schema_version(self) -> str:
        return self.config.get('schema_version', SCHEMA_VERSION)

    # --- Geometry Accessor Methods ---
    def get_geometry(self):
        return self.config.get('geometry', {})

    def get_profile_kind(self) -> Optional[ProfileKind]:
        profile = self.get_geometry().get('profile', {})
        kind = profile.get('kind', None)

        if kind:
            return ProfileKind.from_string(kind)

    def get_profile_params(self) -> Tuple[float, ...]:
        profile = self.get_geometry().get('profile', {})
        return tuple(float(p) for p in profile.get('params', [0.3]))

    def get_dimension(self) -> int:
        return self.get_geometry().get('dimension', 2)

    # --- Operator and Reaction Accessor Methods ---
    def get_operator(self):
        return self.config.get('operator', {})

    def get_mu(self) -> float:
        return float(self.get_operator().get('mu', 1.0))

    def get_alpha(self) -> float:
        return float(self.get_operator().get('alpha', 0.25))

    def get_reaction(self):
        return self.config.get('reaction', {})

    def get_reaction_kind(self) -> ReactionKind:
        return ReactionKind.from_string(self.get_reaction().get('kind', 'cubic'))

    def get_reaction_params(self):
        return self.get_reaction().get('params', {})

    def get_dissipativity_threshold(self) -> Optional[float]:
        return self.get_reaction().get('M', None)

    def get_cutoff_radius(self) -> Optional[float]:
        """None for R = "auto"."""
        radius = self.config.get('cutoff', {}).get('R', 'auto')
        return None if radius == 'auto' else float(radius)

    # --- Discretization and Dynamics Accessor Methods ---
    def get_discretization(self):
        return self.config.get('discretization', {})

    def get_dynamics(self):
        return self.config.get('dynamics', {})

    def get_scheme(self) -> SchemeType:
        return SchemeType.from_string(self.get_dynamics().get('scheme', 'etd1'))

    # --- Manifold and Shadowing Accessor Methods ---
    def get_manifold(self):
        return self.config.get('manifold', {})

    def get_manifold_dimension(self) -> Optional[int]:
        """None for m = "auto"."""
        m = self.get_manifold().get('m', 1)
        return None if m == 'auto' else int(m)

    def get_shadowing(self):
        return self.config.get('shadowing', {})

    # --- Sweep and Output Accessor Methods ---
    def get_sweep(self):
        return self.config.get('sweep', {})

    def get_eps_list(self) -> Tuple[float, ...]:
        return tuple(float(e) for e in self.get_sweep().get('eps_list', [2.0 ** -k for k in range(3, 8)]))

    def get_seed(self) -> int:
        return int(self.get_sweep().get('seed', 0))

    def get_output(self):
        return self.config.get('output', {})

    def get_output_format(self) -> ReportFormat:
        return ReportFormat.from_string(self.get_output().get('format', 'csv'))

    # --- Logging Accessor Methods ---
    def get_logging(self):
        return self.config.get('logging', {})

    def get_logging_level(self):
        logging = self.get_logging()
        return logging.get('log_level', 'INFO')

    def should_log_to_file(self) -> bool:
        logging = self.get_logging()
        return logging.get('log_to_file', False)

    def build_experiment_config(self) -> ExperimentConfig:
        reaction = self.get_reaction_params()
        discretization = self.get_discretization()
        dynamics = self.get_dynamics()
        manifold = self.get_manifold()
        shadowing = self.get_shadowing()
        sweep = self.get_sweep()
        defaults = ExperimentConfig()

        return ExperimentConfig(
            profile_kind=self.get_profile_kind() or defaults.profile_kind,
            profile_params=self.get_profile_params(),
            dimension=int(self.get_dimension()),
            mu=self.get_mu(),
            alpha=self.get_alpha(),
            reaction_kind=self.get_reaction_kind(),
            reaction_a=float(reaction.get('a', defaults.reaction_a)),
            reaction_b=float(reaction.get('b', defaults.reaction_b)),
            tilt=float(reaction.get('tilt', defaults.tilt)),
            M=self.get_dissipativity_threshold(),
            R=self.get_cutoff_radius(),
            nx=int(discretization.get('nx', defaults.nx)),
            nz=int(discretization.get('nz', defaults.nz)),
            n1d=int(discretization.get('n1d', defaults.n1d)),
            dense_limit=int(discretization.get('dense_limit', defaults.dense_limit)),
            dt=float(dynamics.get('dt', defaults.dt)),
            scheme=self.get_scheme(),
            n_modes=int(dynamics.get('n_modes', defaults.n_modes)),
            samples_per_unit=int(dynamics.get('samples_per_unit', defaults.samples_per_unit)),
            equilibrium_seeds=tuple(float(s) for s in dynamics.get('equilibrium_seeds', defaults.equilibrium_seeds)),
            m=self.get_manifold_dimension(),
            m_max=int(manifold.get('m_max', defaults.m_max)),
            nodes_per_axis=int(manifold.get('nodes_per_axis', defaults.nodes_per_axis)),
            enforce_gap=bool(manifold.get('enforce_gap', defaults.enforce_gap)),
            max_iterations=int(manifold.get('max_iterations', defaults.max_iterations)),
            window=int(shadowing.get('window', defaults.window)),
            deltas=tuple(float(d) for d in shadowing.get('deltas', defaults.deltas)),
            samples_per_delta=int(shadowing.get('samples_per_delta', defaults.samples_per_delta)),
            eps_list=self.get_eps_list(),
            seed=self.get_seed(),
            threads=int(sweep.get('threads', defaults.threads)),
            output_directory=self.get_output().get('directory', defaults.output_directory),
            output_format=self.get_output_format(),
            schema_version=self.get_schema_version(),
        )
