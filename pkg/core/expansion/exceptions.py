class ExpansionError(Exception):
    """Base class for asymptotic expansion errors."""
    pass

class CompatibilityError(ExpansionError):
    def __init__(self, x, residual, tolerance, message="limit equation residual too large"):
        self.x = x
        self.residual = residual
        self.tolerance = tolerance
        self.message = f"{message} at x={x:.6g}: {residual:.3e} > {tolerance:.1e}"
        super().__init__(self.message)

class EpsilonOrderError(ExpansionError):
    def __init__(self, eps_list, message="Epsilon values must be strictly decreasing in (0, 1]"):
        self.eps_list = list(eps_list)
        self.message = f"{message}, got {self.eps_list}"
        super().__init__(self.message)
