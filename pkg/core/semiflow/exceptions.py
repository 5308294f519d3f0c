class SemiflowError(Exception):
    """Base class for time integration and equilibrium errors."""
    pass

class BlowUpError(SemiflowError):
    def __init__(self, time, sup_norm, bound, message="Trajectory left the sup-norm guard, check the cut-off"):
        self.time = time
        self.sup_norm = sup_norm
        self.bound = bound
        self.message = f"{message}: sup|u|={sup_norm:.4g} > {bound:.4g} at t={time:.6g}"
        super().__init__(self.message)

class EmptySeedError(SemiflowError):
    def __init__(self, what="seed list", message="Received an empty"):
        self.what = what
        self.message = f"{message} {what}"
        super().__init__(self.message)

class HypothesisViolationError(SemiflowError):
    def __init__(self, index, closest_eigenvalue, message="Hyperbolicity hypothesis violated: non-hyperbolic equilibrium"):
        self.index = index
        self.closest_eigenvalue = closest_eigenvalue
        self.message = f"{message} #{index} (linearization eigenvalue {closest_eigenvalue:.3e})"
        super().__init__(self.message)

class ProbeRadiusError(SemiflowError):
    def __init__(self, norm, radius, message="Probe lies outside the admissible ball"):
        self.norm = norm
        self.radius = radius
        self.message = f"{message}: ||w0||={norm:.6g} > R={radius:.6g}"
        super().__init__(self.message)

class SupNormViolationError(SemiflowError):
    def __init__(self, sup_norm, bound, message="Attractor samples leave the sup-norm bound M"):
        self.sup_norm = sup_norm
        self.bound = bound
        self.message = f"{message}: sup|u|={sup_norm:.4f} > {bound:.4f}"
        super().__init__(self.message)
