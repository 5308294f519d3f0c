import logging
from functools import cached_property
from typing import Optional
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu, norm as sparse_norm
from core.geometry.channel_profile import ChannelProfile
from core.geometry.mapped_grid import MappedGrid
from .exceptions import InvalidOperatorConfigError, OperatorError, SolverBreakdownError
from .fem_assembly import assemble_1d
from .operator_config import OperatorConfig, OperatorKind

SYMMETRY_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-10
MIN_LIMIT_NODES = 8

class DiscreteOperator:
    """
    Galerkin matrices of A_eps on the reference rectangle or of A_0 on [0, 1].

    The weak form is stiffness u = mass f. For A_eps the energy form u^T S u is the
    H^1_eps(Q) norm squared (mu-term included); `transverse` holds int (1/r) u_z v_z,
    the reference form of ||grad_y u||^2.
    """
    def __init__(
        self,
        stiffness: sp.csr_matrix,
        mass: sp.csr_matrix,
        kind: OperatorKind,
        config: OperatorConfig,
        x_nodes: np.ndarray,
        profile: ChannelProfile,
        grid: Optional[MappedGrid] = None,
        transverse: Optional[sp.csr_matrix] = None
    ):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.stiffness = stiffness.tocsr()
        self.mass = mass.tocsr()
        self.kind = kind
        self.config = config
        self.x_nodes = x_nodes
        self.profile = profile
        self.grid = grid
        self.transverse = transverse
        self._check_symmetry()

    @property
    def size(self) -> int:
        return self.stiffness.shape[0]

    @property
    def epsilon(self) -> Optional[float]:
        return self.config.epsilon

    @cached_property
    def factorization(self):
        return splu(self.stiffness.tocsc())

    @cached_property
    def mass_factorization(self):
        return splu(self.mass.tocsc())

    @cached_property
    def stiffness_norm(self) -> float:
        return float(sparse_norm(self.stiffness, 1))

    @cached_property
    def mass_norm(self) -> float:
        return float(sparse_norm(self.mass, 1))

    def apply(self, u: np.ndarray) -> np.ndarray:
        """Strong action mass^{-1} stiffness u."""
        return self.mass_factorization.solve(self.stiffness @ u)

    def l2_norm(self, u: np.ndarray) -> float:
        return float(np.sqrt(max(u @ (self.mass @ u), 0.0)))

    def energy_norm(self, u: np.ndarray) -> float:
        return float(np.sqrt(max(u @ (self.stiffness @ u), 0.0)))

    def transverse_energy(self, u: np.ndarray) -> float:
        if self.transverse is None:
            raise OperatorError("The limit operator has no transverse form")
        return float(u @ (self.transverse @ u))

    def _check_symmetry(self):
        for name, matrix in (("stiffness", self.stiffness), ("mass", self.mass)):
            asymmetry = abs(matrix - matrix.T).max() if matrix.nnz else 0.0
            scale = abs(matrix).max() if matrix.nnz else 1.0
            if asymmetry > SYMMETRY_TOLERANCE * scale:
                raise OperatorError(f"{self.kind.value} {name} matrix is not symmetric (defect {asymmetry:.3e})")

def assemble_A0(profile: ChannelProfile, config: OperatorConfig, n: int) -> DiscreteOperator:
    """P1 elements for -(1/g)(g v')' + mu v with natural boundary conditions, weight g."""
    if n < MIN_LIMIT_NODES:
        raise InvalidOperatorConfigError("n", n, "Limit operator needs at least 8 nodes")

    x = np.linspace(0.0, 1.0, n)
    stiffness_g = assemble_1d(x, profile.g, "stiffness")
    mass_g = assemble_1d(x, profile.g, "mass")
    stiffness = stiffness_g + config.mu * mass_g
    return DiscreteOperator(stiffness, mass_g, OperatorKind.A_0, config.with_epsilon(None), x, profile)

def assemble_Aeps(grid: MappedGrid, config: OperatorConfig) -> DiscreteOperator:
    """
    Q1 elements for the pulled-back thin-channel operator on [0, 1] x [-1, 1].

    With y = r(x) z and area weight r dx dz the form
    int (u_x v_x + eps^-2 u_y v_y + mu u v) splits into Kronecker products of 1D matrices;
    the r' cross terms vanish for straight channels.
    """
    epsilon = config.epsilon
    if epsilon is None or not 0 < epsilon <= 1:
        raise InvalidOperatorConfigError("epsilon", epsilon, "A_eps needs epsilon in (0, 1]")

    profile = grid.profile
    x, z = grid.x, grid.z
    r, r_prime = profile.r, profile.r_prime

    stiffness_x = assemble_1d(x, r, "stiffness")
    mass_x = assemble_1d(x, r, "mass")
    advection_x = assemble_1d(x, r_prime, "advection")
    mass_x_slope = assemble_1d(x, lambda s: r_prime(s) ** 2 / r(s), "mass")
    mass_x_inverse = assemble_1d(x, lambda s: 1.0 / r(s), "mass")

    mass_z = assemble_1d(z, None, "mass")
    stiffness_z = assemble_1d(z, None, "stiffness")
    advection_z = assemble_1d(z, lambda s: s, "advection").T.tocsr()
    stiffness_z_weighted = assemble_1d(z, lambda s: s ** 2, "stiffness")

    cross = sp.kron(advection_x, advection_z)
    transverse = sp.kron(mass_x_inverse, stiffness_z).tocsr()
    mass = sp.kron(mass_x, mass_z).tocsr()
    stiffness = (
        sp.kron(stiffness_x, mass_z)
        - cross
        - cross.T
        + sp.kron(mass_x_slope, stiffness_z_weighted)
        + transverse / epsilon ** 2
        + config.mu * mass
    )
    return DiscreteOperator(stiffness.tocsr(), mass, OperatorKind.A_EPS, config, x, profile, grid, transverse)

def solve_resolvent(op: DiscreteOperator, rhs: np.ndarray) -> np.ndarray:
    """
    Solves stiffness u = mass rhs, i.e. u = A^{-1} rhs.

    Raises:
        SolverBreakdownError: If the relative (backward-error) residual exceeds 1e-10.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape[0] != op.size:
        raise ValueError(f"Right-hand side has {rhs.shape[0]} entries, operator has {op.size}")

    load = op.mass @ rhs
    load_norm = np.linalg.norm(load, axis=0)
    if np.all(load_norm == 0):
        return np.zeros_like(rhs)

    solution = op.factorization.solve(load)
    # normwise backward error
    scale = op.stiffness_norm * np.linalg.norm(solution, axis=0) + load_norm
    residual = np.linalg.norm(op.stiffness @ solution - load, axis=0) / np.where(scale > 0, scale, 1.0)
    worst = float(np.max(residual))

    if worst > RESIDUAL_TOLERANCE:
        op.logger.error(f"Resolvent solve for {op.kind.value} stalled at relative residual {worst:.3e}")
        raise SolverBreakdownError(worst)

    return solution
