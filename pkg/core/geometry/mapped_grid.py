import logging
from dataclasses import dataclass
from typing import Dict
import numpy as np
from numpy.polynomial.legendre import leggauss
from .channel_profile import ChannelProfile
from .exceptions import GridResolutionError, InteriorNodeError, UnsupportedDimensionError

QUADRATURE_ORDER = 3
MIN_NODES = 4

@dataclass(frozen=True, eq=False)
class MappedGrid:
    """
    Tensor grid on the reference rectangle [0, 1] x [-1, 1].

    The reference map is L(x, z) = (x, r(x) z). Node (i, k) has flat index i * nz + k.
    Per-cell Gauss data (xq, wq) carry the Jacobian r(x) at the quadrature points.
    """
    profile: ChannelProfile
    nx: int
    nz: int
    x: np.ndarray
    z: np.ndarray
    nodes: np.ndarray
    xq: np.ndarray
    wq: np.ndarray
    jacobian: np.ndarray
    metric_xz: np.ndarray
    metric_zz: np.ndarray
    boundary_tags: Dict[str, np.ndarray]

    @property
    def size(self) -> int:
        return self.nx * self.nz

    def node_index(self, i: int, k: int) -> int:
        return i * self.nz + k

    def jacobian_integral(self) -> float:
        """Integral of r(x) over [0, 1] by the assembly quadrature."""
        return float(np.sum(self.wq * self.jacobian))

    def weighted_area(self) -> float:
        """Reference-weighted area of Q; equals the integral of g for d = 2."""
        return float((self.z[-1] - self.z[0]) * self.jacobian_integral())

    def is_boundary(self, node: int) -> bool:
        return any(node in indices for indices in self.boundary_tags.values())

def build_mapped_grid(profile: ChannelProfile, nx: int, nz: int) -> MappedGrid:
    if nx < MIN_NODES or nz < MIN_NODES:
        raise GridResolutionError(nx, nz)

    if profile.d != 2:
        raise UnsupportedDimensionError(f"Grid assembly is available for d = 2 only, got d = {profile.d}")

    x = np.linspace(0.0, 1.0, nx)
    z = np.linspace(-1.0, 1.0, nz)
    X, Z = np.meshgrid(x, z, indexing="ij")
    nodes = np.column_stack([X.ravel(), Z.ravel()])

    points, weights = leggauss(QUADRATURE_ORDER)
    left, h = x[:-1], np.diff(x)
    xq = left[:, None] + 0.5 * h[:, None] * (points[None, :] + 1.0)
    wq = 0.5 * h[:, None] * weights[None, :]
    jacobian = profile.r(xq)

    r_nodes = profile.r(X)
    metric_xz = (-Z * profile.r_prime(X) / r_nodes).ravel()
    metric_zz = (1.0 / r_nodes).ravel()

    index = np.arange(nx * nz).reshape(nx, nz)
    boundary_tags = {
        "lid_0": index[0, :].copy(),
        "lid_1": index[-1, :].copy(),
        "lateral": np.concatenate([index[1:-1, 0], index[1:-1, -1]]),
    }

    logging.getLogger(__name__).debug(f"Built mapped grid nx={nx}, nz={nz}, min jacobian={jacobian.min():.4g}")
    return MappedGrid(profile, nx, nz, x, z, nodes, xq, wq, jacobian, metric_xz, metric_zz, boundary_tags)

def outward_normal(grid: MappedGrid, node: int, epsilon: float = 1.0) -> np.ndarray:
    """
    Unit outward normal of the thin channel at a boundary node, in (x, y) components.

    Lids are (-1, 0) and (1, 0); on the lateral boundary the normal is
    (-eps r', y/r) / sqrt(eps^2 r'^2 + 1) with y/r = z = +-1.
    """
    i, k = divmod(int(node), grid.nz)

    if i == 0:
        return np.array([-1.0, 0.0])
    elif i == grid.nx - 1:
        return np.array([1.0, 0.0])
    elif k not in (0, grid.nz - 1):
        raise InteriorNodeError(node)

    x, z = grid.x[i], grid.z[k]
    slope = epsilon * float(grid.profile.r_prime(x))
    scale = np.sqrt(slope ** 2 + 1.0)
    return np.array([-slope / scale, z / scale])
