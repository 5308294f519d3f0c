import logging
from typing import Iterable, Sequence, Tuple
import numpy as np
import scipy.sparse as sp
from core.geometry.channel_profile import ChannelProfile, poincare_constants
from core.geometry.mapped_grid import MappedGrid
from .discrete_operator import DiscreteOperator, assemble_A0, assemble_Aeps, solve_resolvent
from .eigen_basis import EigenBasis, align_signs, norm_eval
from .exceptions import NearDegenerateGapError
from .fem_assembly import assemble_1d
from .norm_kind import NormKind
from .operator_config import OperatorConfig
from .transfer_operators import TransferOperators, build_transfer

GAP_TOLERANCE = 1e-8
NORMALIZATION_TOLERANCE = 1e-8

class ResolventComparator:
    """
    Holds A_eps, A_0 and the transfer pair for one grid so that several right-hand
    sides reuse the same factorizations.
    """
    def __init__(self, op_eps: DiscreteOperator, op_0: DiscreteOperator, transfer: TransferOperators):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.op_eps = op_eps
        self.op_0 = op_0
        self.transfer = transfer

    @classmethod
    def build(cls, profile: ChannelProfile, config: OperatorConfig, grid: MappedGrid) -> "ResolventComparator":
        op_eps = assemble_Aeps(grid, config)
        op_0 = assemble_A0(profile, config, grid.nx)
        return cls(op_eps, op_0, build_transfer(grid))

    def distance(self, rhs: np.ndarray) -> float:
        """||A_eps^{-1} f - E A_0^{-1} M f|| in the energy norm of A_eps."""
        rhs = np.asarray(rhs, dtype=float)
        size = self.op_eps.l2_norm(rhs)

        if size == 0.0:
            return 0.0

        if abs(size - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"Right-hand side must be L2(Q)-normalized, got norm {size:.12g}")

        thin = solve_resolvent(self.op_eps, rhs)
        limit = solve_resolvent(self.op_0, self.transfer.average(rhs))
        return self.op_eps.energy_norm(thin - self.transfer.extend(limit))

def resolvent_distance(profile: ChannelProfile, config: OperatorConfig, grid: MappedGrid, rhs_set: Iterable[np.ndarray]) -> float:
    comparator = ResolventComparator.build(profile, config, grid)
    distances = [comparator.distance(rhs) for rhs in rhs_set]
    result = max(distances, default=0.0)
    comparator.logger.debug(f"eps={config.epsilon}: resolvent distance {result:.6e} over {len(distances)} right-hand sides")
    return result

def normalized_probe(op: DiscreteOperator, u: np.ndarray) -> np.ndarray:
    size = op.l2_norm(u)
    return u / size if size > 0 else u

def projection_distance(
    basis_eps: EigenBasis,
    basis_0: EigenBasis,
    transfer: TransferOperators,
    m: int,
    probes: Sequence[np.ndarray]
) -> float:
    """
    max_v ||P_m^eps E v - E P_m^0 v||_{X^alpha} / ||v||_{L2_g}.

    Raises:
        NearDegenerateGapError: If lambda_{m+1}^0 - lambda_m^0 is below tolerance.
    """
    if not 0 < m < min(basis_eps.count, basis_0.count):
        raise ValueError(f"m={m} must be positive and below both basis counts ({basis_eps.count}, {basis_0.count})")

    gap = float(basis_0.values[m] - basis_0.values[m - 1])
    if gap <= GAP_TOLERANCE * basis_0.values[m - 1]:
        raise NearDegenerateGapError(m, gap)

    basis_eps = align_signs(basis_eps, basis_0, transfer, m)
    modes_eps = basis_eps.vectors[:, :m]
    modes_0 = basis_0.vectors[:, :m]
    worst = 0.0

    for v in probes:
        size = basis_0.operator.l2_norm(v)
        if size == 0.0:
            continue
        lifted = transfer.extend(v)
        thin = modes_eps @ (modes_eps.T @ (basis_eps.operator.mass @ lifted))
        limit = transfer.extend(modes_0 @ (modes_0.T @ (basis_0.operator.mass @ v)))
        worst = max(worst, norm_eval(thin - limit, basis_eps, NormKind.XALPHA) / size)

    return worst

def _reference_forms(grid: MappedGrid) -> Tuple[sp.csr_matrix, sp.csr_matrix]:
    r = grid.profile.r
    mass = sp.kron(assemble_1d(grid.x, r, "mass"), assemble_1d(grid.z, None, "mass")).tocsr()
    transverse = sp.kron(assemble_1d(grid.x, lambda s: 1.0 / r(s), "mass"), assemble_1d(grid.z, None, "stiffness")).tocsr()
    return mass, transverse

def poincare_defect(u: np.ndarray, transfer: TransferOperators, grid: MappedGrid) -> Tuple[float, float]:
    """
    Returns (||u - EMu||^2, beta ||grad_y u||^2) on the unit-thickness channel Q.

    beta = 1 / lambda_hat_2 is the worst cross-section Poincare constant.
    """
    mass, transverse = _reference_forms(grid)
    _, _, beta = poincare_constants(grid.profile)
    remainder = u - transfer.extend(transfer.average(u))
    defect = float(remainder @ (mass @ remainder))
    bound = beta * float(u @ (transverse @ u))
    return defect, bound
