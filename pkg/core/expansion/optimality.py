import logging
from dataclasses import dataclass, field
from typing import List, Sequence
import numpy as np
from core.geometry.channel_profile import ChannelProfile
from core.geometry.mapped_grid import build_mapped_grid
from core.operators.discrete_operator import assemble_A0, assemble_Aeps, solve_resolvent
from core.operators.operator_config import OperatorConfig
from core.operators.transfer_operators import build_transfer
from .cell_problem import expansion_terms
from .closed_form_field import ScalarFn, solve_limit_field
from .exceptions import EpsilonOrderError

FLOOR_DISTANCE = 1e-8
ODD_TERM_LIMIT = 0.1

logger = logging.getLogger(__name__)

def check_eps_order(eps_list: Sequence[float]):
    eps = list(eps_list)
    if not eps or any(not 0 < e <= 1 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise EpsilonOrderError(eps)

@dataclass(frozen=True)
class OptimalityRow:
    epsilon: float
    distance: float
    ratio: float
    at_floor: bool

@dataclass(frozen=True)
class OptimalityTable:
    target: float
    rows: List[OptimalityRow] = field(default_factory=list)

    @property
    def increments(self) -> List[float]:
        """|ratio_k - ratio_{k-1}| over the rows above the floor."""
        ratios = [row.ratio for row in self.rows if not row.at_floor]
        return [abs(b - a) for a, b in zip(ratios, ratios[1:])]

    @property
    def relative_deviation(self) -> float:
        """|ratio - target| / target at the smallest epsilon above the floor."""
        usable = [row for row in self.rows if not row.at_floor]
        if not usable or self.target == 0:
            return float("nan")
        return abs(usable[-1].ratio - self.target) / self.target

def optimality_ratio(
    profile: ChannelProfile,
    config: OperatorConfig,
    f: ScalarFn,
    eps_list: Sequence[float],
    nx: int,
    nz: int,
    n1d: int
) -> OptimalityTable:
    """
    ||u_eps - E v_0||_{H^1_eps(Q)} / eps for each epsilon, where A_eps u_eps = E f and
    A_0 v_0 = f on the same x-nodes; the target ||grad_y V_2|| uses a limit grid of n1d nodes.
    Rows whose distance is below 1e-8 are flagged as being at the floor.

    Raises:
        EpsilonOrderError: If eps_list is not strictly decreasing in (0, 1].
    """
    check_eps_order(eps_list)

    limit_config = config.with_epsilon(None)
    target = expansion_terms(profile, solve_limit_field(assemble_A0(profile, limit_config, n1d), f), f, config.mu).grad_y_V2_norm

    grid = build_mapped_grid(profile, nx, nz)
    transfer = build_transfer(grid)
    forcing = f(grid.x)
    lifted_limit = transfer.extend(solve_resolvent(assemble_A0(profile, limit_config, grid.nx), forcing))
    rhs = transfer.extend(forcing)

    rows = []
    for epsilon in eps_list:
        op_eps = assemble_Aeps(grid, config.with_epsilon(epsilon))
        distance = op_eps.energy_norm(solve_resolvent(op_eps, rhs) - lifted_limit)
        rows.append(OptimalityRow(float(epsilon), distance, distance / epsilon, distance <= FLOOR_DISTANCE))
        logger.debug(f"eps={epsilon:.6g}: ||u_eps - E v0|| / eps = {distance / epsilon:.6g}")

    table = OptimalityTable(target, rows)
    logger.info(f"Optimality ratio target {target:.6g}, relative deviation {table.relative_deviation:.3%}")
    return table

def odd_term_ratio(eps_values: Sequence[float], ratios: Sequence[float]) -> float:
    """
    Richardson split of ratio(eps) = a + b eps + c eps^2 through three points; returns
    |b eps_min| / |a + c eps_min^2|, the odd part relative to the even part at the
    smallest epsilon.
    """
    eps = np.asarray(eps_values, dtype=float)
    if eps.shape != (3,) or len(ratios) != 3:
        raise ValueError("Richardson split needs exactly three (epsilon, ratio) pairs")

    a, b, c = np.linalg.solve(np.vander(eps, 3, increasing=True), np.asarray(ratios, dtype=float))
    smallest = float(np.min(eps))
    even = abs(a + c * smallest ** 2)
    if even == 0:
        return 0.0 if b == 0 else float("inf")
    return abs(b * smallest) / even

def odd_terms_vanish(table: OptimalityTable) -> bool:
    """Applies the Richardson split to the three smallest epsilon rows above the floor."""
    usable = [row for row in table.rows if not row.at_floor][-3:]
    if len(usable) < 3:
        return True
    return odd_term_ratio([row.epsilon for row in usable], [row.ratio for row in usable]) <= ODD_TERM_LIMIT
