class OperatorError(Exception):
    """Base class for discrete operator errors."""
    pass

class InvalidOperatorConfigError(OperatorError):
    def __init__(self, field, value, message="Invalid operator configuration"):
        self.field = field
        self.value = value
        self.message = f"{message}: {field}={value}"
        super().__init__(self.message)

class SolverBreakdownError(OperatorError):
    def __init__(self, residual, message="Linear solve did not reach the residual tolerance"):
        self.residual = residual
        self.message = f"{message} (relative residual {residual:.3e})"
        super().__init__(self.message)

class EigenSolverError(OperatorError):
    def __init__(self, residuals, message="Eigen-solver did not converge"):
        self.residuals = list(residuals)
        worst = max(self.residuals) if self.residuals else float("nan")
        self.message = f"{message} (worst residual {worst:.3e})"
        super().__init__(self.message)

class DegenerateClusterError(OperatorError):
    def __init__(self, index, values, message="degenerate cluster"):
        self.index = index
        self.values = values
        self.message = f"{message} at modes {index}, {index + 1}: {values[0]:.12g}, {values[1]:.12g}"
        super().__init__(self.message)

class NearDegenerateGapError(OperatorError):
    def __init__(self, m, gap, message="near-degenerate gap"):
        self.m = m
        self.gap = gap
        self.message = f"{message} after mode {m}: {gap:.3e}"
        super().__init__(self.message)

class TruncationError(OperatorError):
    def __init__(self, tail_fraction, modes, message="Spectral truncation tail above threshold, increase the number of modes"):
        self.tail_fraction = tail_fraction
        self.modes = modes
        self.message = f"{message} (tail {tail_fraction:.3e} with {modes} modes)"
        super().__init__(self.message)
