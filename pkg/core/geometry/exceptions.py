class GeometryError(Exception):
    """Base class for channel geometry errors."""
    pass

class InvalidProfileError(GeometryError):
    def __init__(self, r_min, message="Channel profile must stay positive on [0, 1]"):
        self.r_min = r_min
        self.message = f"{message} (sampled min r = {r_min:.6g})"
        super().__init__(self.message)

class GridResolutionError(GeometryError):
    def __init__(self, nx, nz, message="Mapped grid needs at least 4 nodes per direction"):
        self.nx = nx
        self.nz = nz
        self.message = f"{message}: nx={nx}, nz={nz}"
        super().__init__(self.message)

class InteriorNodeError(GeometryError):
    def __init__(self, node, message="Node is not on the boundary"):
        self.node = node
        self.message = f"{message}: {node}"
        super().__init__(self.message)

class UnsupportedDimensionError(GeometryError):
    """Raised when a dimension is only supported for formula evaluation."""
    pass
