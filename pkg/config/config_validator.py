import logging
from core.geometry.profile_kind import ProfileKind
from core.nonlinearity.reaction_kind import ReactionKind
from core.semiflow.scheme_type import SchemeType
from utils.report_format import ReportFormat
from .experiment_config import MIN_N1D, MIN_NX, MIN_NZ, SCHEMA_VERSION
from .exceptions import ConfigValidationError

class ConfigValidator:
    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__name__)

    def validate(self, config):
        missing_fields = []
        invalid_fields = []
        missing_fields += self._validate_required_fields(config)
        invalid_fields += self._validate_schema_version(config)
        missing_geometry, invalid_geometry = self._validate_geometry(config)
        missing_fields += missing_geometry
        invalid_fields += invalid_geometry
        invalid_fields += self._validate_operator(config)
        invalid_fields += self._validate_reaction(config)
        invalid_fields += self._validate_cutoff(config)
        invalid_fields += self._validate_discretization(config)
        invalid_fields += self._validate_dynamics(config)
        invalid_fields += self._validate_manifold(config)
        missing_sweep, invalid_sweep = self._validate_sweep(config)
        missing_fields += missing_sweep
        invalid_fields += invalid_sweep
        invalid_fields += self._validate_output(config)
        missing_logging_settings, invalid_logging_settings = self._validate_logging(config)
        missing_fields += missing_logging_settings
        invalid_fields += invalid_logging_settings

        if missing_fields or invalid_fields:
            raise ConfigValidationError(missing_fields=missing_fields, invalid_fields=invalid_fields)

    def _validate_required_fields(self, config):
        required_fields = ['schema_version', 'geometry', 'operator', 'reaction', 'sweep', 'logging']
        missing_fields = [field for field in required_fields if field not in config]
        if missing_fields:
            self.logger.error(f"Missing required fields: {missing_fields}")
        return missing_fields

    def _validate_schema_version(self, config):
        version = config.get('schema_version')
        if version is not None and version != SCHEMA_VERSION:
            self.logger.error(f"Unsupported schema version {version}, expected {SCHEMA_VERSION}.")
            return ['schema_version']
        return []

    def _validate_geometry(self, config):
        missing_fields = []
        invalid_fields = []
        geometry = config.get('geometry', {})
        profile = geometry.get('profile', {})

        kind = profile.get('kind')
        if kind is None:
            missing_fields.append('geometry.profile.kind')
        else:
            try:
                ProfileKind.from_string(kind)
            except ValueError as e:
                self.logger.error(str(e))
                invalid_fields.append('geometry.profile.kind')

        params = profile.get('params')
        if params is None:
            missing_fields.append('geometry.profile.params')
        elif not isinstance(params, list) or not params or not all(isinstance(p, (int, float)) for p in params):
            self.logger.error("Profile parameters must be a non-empty list of numbers.")
            invalid_fields.append('geometry.profile.params')

        dimension = geometry.get('dimension', 2)
        if not isinstance(dimension, int) or dimension < 2:
            self.logger.error("Channel dimension must be an integer >= 2.")
            invalid_fields.append('geometry.dimension')

        return missing_fields, invalid_fields

    def _validate_operator(self, config):
        invalid_fields = []
        operator = config.get('operator', {})

        mu = operator.get('mu', 1.0)
        if not isinstance(mu, (int, float)) or mu <= 0:
            self.logger.error("operator.mu must be a positive number.")
            invalid_fields.append('operator.mu')

        alpha = operator.get('alpha', 0.25)
        if not isinstance(alpha, (int, float)) or not 0 < alpha < 0.5:
            self.logger.error("operator.alpha must lie in (0, 1/2).")
            invalid_fields.append('operator.alpha')

        return invalid_fields

    def _validate_reaction(self, config):
        invalid_fields = []
        reaction = config.get('reaction', {})

        try:
            ReactionKind.from_string(reaction.get('kind', 'cubic'))
        except ValueError as e:
            self.logger.error(str(e))
            invalid_fields.append('reaction.kind')

        params = reaction.get('params', {})
        if not isinstance(params, dict) or not all(isinstance(value, (int, float)) for value in params.values()):
            self.logger.error("reaction.params must map names to numbers.")
            invalid_fields.append('reaction.params')

        M = reaction.get('M')
        if M is not None and (not isinstance(M, (int, float)) or M <= 0):
            invalid_fields.append('reaction.M')

        return invalid_fields

    def _validate_cutoff(self, config):
        radius = config.get('cutoff', {}).get('R', 'auto')
        if radius != 'auto' and (not isinstance(radius, (int, float)) or radius <= 0):
            self.logger.error("cutoff.R must be a positive number or 'auto'.")
            return ['cutoff.R']
        return []

    def _validate_discretization(self, config):
        invalid_fields = []
        discretization = config.get('discretization', {})

        for key, minimum in (('nx', MIN_NX), ('nz', MIN_NZ), ('n1d', MIN_N1D)):
            value = discretization.get(key, minimum)
            if not isinstance(value, int) or value < minimum:
                self.logger.error(f"discretization.{key} must be an integer >= {minimum}.")
                invalid_fields.append(f'discretization.{key}')

        return invalid_fields

    def _validate_dynamics(self, config):
        invalid_fields = []
        dynamics = config.get('dynamics', {})

        dt = dynamics.get('dt', 1.0 / 256)
        if not isinstance(dt, (int, float)) or dt <= 0 or abs(round(1.0 / dt) * dt - 1.0) > 1e-12:
            self.logger.error("dynamics.dt must be positive and divide the unit time interval.")
            invalid_fields.append('dynamics.dt')

        try:
            SchemeType.from_string(dynamics.get('scheme', 'etd1'))
        except ValueError as e:
            self.logger.error(str(e))
            invalid_fields.append('dynamics.scheme')

        return invalid_fields

    def _validate_manifold(self, config):
        manifold = config.get('manifold', {})
        m = manifold.get('m', 1)
        if m != 'auto' and (not isinstance(m, int) or m < 1):
            self.logger.error("manifold.m must be a positive integer or 'auto'.")
            return ['manifold.m']
        return []

    def _validate_sweep(self, config):
        missing_fields = []
        invalid_fields = []
        sweep = config.get('sweep', {})

        eps_list = sweep.get('eps_list')
        if eps_list is None:
            missing_fields.append('sweep.eps_list')
        elif not isinstance(eps_list, list) or not eps_list or not all(isinstance(e, (int, float)) and 0 < e <= 1 for e in eps_list):
            self.logger.error("sweep.eps_list must be a non-empty list of numbers in (0, 1].")
            invalid_fields.append('sweep.eps_list')
        elif any(b >= a for a, b in zip(eps_list, eps_list[1:])):
            self.logger.error("sweep.eps_list must be strictly decreasing.")
            invalid_fields.append('sweep.eps_list')

        seed = sweep.get('seed', 0)
        if not isinstance(seed, int) or seed < 0:
            invalid_fields.append('sweep.seed')

        return missing_fields, invalid_fields

    def _validate_output(self, config):
        try:
            ReportFormat.from_string(config.get('output', {}).get('format', 'csv'))
        except ValueError as e:
            self.logger.error(str(e))
            return ['output.format']
        return []

    def _validate_logging(self, config):
        missing_fields = []
        invalid_fields = []
        logging_settings = config.get('logging', {})

        log_level = logging_settings.get('log_level')
        valid_log_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if log_level is None:
            missing_fields.append('logging.log_level')
        elif log_level.upper() not in valid_log_levels:
            self.logger.error(f"Invalid log level: {log_level}. Must be one of {valid_log_levels}.")
            invalid_fields.append('logging.log_level')

        if not isinstance(logging_settings.get('log_to_file'), bool):
            self.logger.error("log_to_file must be a boolean.")
            invalid_fields.append('logging.log_to_file')

        if missing_fields:
            self.logger.error(f"Missing logging fields: {missing_fields}")

        return missing_fields, invalid_fields
