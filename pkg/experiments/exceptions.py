class ExperimentError(Exception):
    """Base class for all experiment-related errors."""
    pass

class RateFitError(ExperimentError):
    def __init__(self, message="Rate fit rejected its input"):
        self.message = message
        super().__init__(self.message)

class EmptySweepError(ExperimentError):
    def __init__(self, message="Sweep has no epsilon values"):
        self.message = message
        super().__init__(self.message)

class HypothesisAbortError(ExperimentError):
    def __init__(self, epsilon, diagnosis, message="Pipeline aborted: hyperbolicity hypothesis violated"):
        self.epsilon = epsilon
        self.diagnosis = diagnosis
        where = "limit system" if epsilon is None else f"eps={epsilon:.6g}"
        self.message = f"{message} ({where}): {diagnosis}"
        super().__init__(self.message)
