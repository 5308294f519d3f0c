class ManifoldError(Exception):
    """Base class for inertial manifold computations."""
    pass

class GapConditionError(ManifoldError):
    def __init__(self, m, gap, threshold, message="Spectral gap condition fails"):
        self.m = m
        self.gap = gap
        self.threshold = threshold
        self.message = f"{message} for m={m}: gap {gap:.6g} < {threshold:.6g}"
        super().__init__(self.message)

class GraphNotConvergedError(ManifoldError):
    def __init__(self, iterations, contraction, change, message="Graph transform did not converge"):
        self.iterations = iterations
        self.contraction = contraction
        self.change = change
        self.message = f"{message} in {iterations} iterations (last change {change:.3e}, contraction factor {contraction:.3g})"
        super().__init__(self.message)

class GraphLipschitzError(ManifoldError):
    def __init__(self, lipschitz, message="gap insufficient in practice"):
        self.lipschitz = lipschitz
        self.message = f"{message}: measured graph Lipschitz constant {lipschitz:.4g} >= 1"
        super().__init__(self.message)

class GridMismatchError(ManifoldError):
    def __init__(self, message="Graphs live on different coordinate grids"):
        self.message = message
        super().__init__(self.message)

class GridCoverageError(ManifoldError):
    def __init__(self, covered, required, message="Coordinate grid does not cover the required ball"):
        self.covered = covered
        self.required = required
        self.message = f"{message}: covered radius {covered:.6g} < required {required:.6g}"
        super().__init__(self.message)
