class NonlinearityError(Exception):
    """Base class for reaction term and cut-off errors."""
    pass

class InvalidReactionError(NonlinearityError):
    def __init__(self, message="Invalid reaction term"):
        self.message = message
        super().__init__(self.message)

class EmptySampleError(NonlinearityError):
    def __init__(self, what="sample", message="Estimator received an empty"):
        self.what = what
        self.message = f"{message} {what}"
        super().__init__(self.message)
