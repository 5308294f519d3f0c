class ConfigError(Exception):
    """Base class for experiment configuration errors."""
    pass

class ConfigFileNotFoundError(ConfigError):
    def __init__(self, config_file, message="Experiment configuration file not found"):
        self.config_file = config_file
        self.message = f"{message}: {config_file}"
        super().__init__(self.message)

class ConfigValidationError(ConfigError):
    def __init__(self, missing_fields=None, invalid_fields=None, message="Experiment configuration is invalid"):
        self.missing_fields = missing_fields or []
        self.invalid_fields = invalid_fields or []
        details = []
        if self.missing_fields:
            details.append(f"missing {', '.join(self.missing_fields)}")
        if self.invalid_fields:
            details.append(f"invalid {', '.join(self.invalid_fields)}")
        self.message = f"{message}: {'; '.join(details)}"
        super().__init__(self.message)

class ConfigParseError(ConfigError):
    def __init__(self, config_file, original_exception, message="Could not parse experiment configuration"):
        self.config_file = config_file
        self.original_exception = original_exception
        self.message = f"{message} ({config_file}): {original_exception}"
        super().__init__(self.message)
