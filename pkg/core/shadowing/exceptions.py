class ShadowingError(Exception):
    """Base class for pseudo-trajectory and shadowing errors."""
    pass

class ShortTrajectoryError(ShadowingError):
    def __init__(self, length, required, message="Pseudo-trajectory is too short"):
        self.length = length
        self.required = required
        self.message = f"{message}: {length} points, need at least {required}"
        super().__init__(self.message)

class ShadowNewtonError(ShadowingError):
    def __init__(self, residual_history, message="Sequence-space Newton iteration diverged"):
        self.residual_history = list(residual_history)
        last = self.residual_history[-1] if self.residual_history else float("nan")
        self.message = f"{message} after {len(self.residual_history)} iterations (last residual {last:.3e})"
        super().__init__(self.message)

class OutsideNeighborhoodError(ShadowingError):
    def __init__(self, distance, radius, message="outside shadowing neighborhood"):
        self.distance = distance
        self.radius = radius
        self.message = f"Pseudo-orbit {message}: distance {distance:.6g} > {radius:.6g}"
        super().__init__(self.message)

class EmptySetError(ShadowingError):
    def __init__(self, what="point set", message="Received an empty"):
        self.what = what
        self.message = f"{message} {what}"
        super().__init__(self.message)
