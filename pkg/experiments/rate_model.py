from enum import Enum

class RateModel(Enum):
    """C eps^p, or C eps^p |log eps| with the logarithmic correction."""
    POWER = "power"
    LOG_CORRECTED = "log_corrected"

    @staticmethod
    def from_string(rate_model_str: str):
        try:
            return RateModel(rate_model_str)
        except ValueError:
            raise ValueError(f"Invalid rate model: '{rate_model_str}'. Available models are: {', '.join([model.value for model in RateModel])}")
