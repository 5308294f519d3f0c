import logging
from typing import Sequence, Tuple
import numpy as np
from core.operators.discrete_operator import DiscreteOperator
from core.operators.transfer_operators import TransferOperators
from core.nonlinearity.reaction_term import ReactionTerm
from .exceptions import EmptySeedError, ProbeRadiusError
from .stepper import Stepper, time_one_map

MIN_PROBE_PAIRS = 50
RADIUS_SLACK = 1e-12
DISSIPATION_HORIZON = 20.0
SUP_NORM_SLACK = 0.05

logger = logging.getLogger(__name__)

def time_one_distance(
    w0_set: Sequence[np.ndarray],
    stepper_eps: Stepper,
    stepper_0: Stepper,
    transfer: TransferOperators,
    radius: float
) -> float:
    """
    max ||T_eps(E w0) - E T_0(w0)|| in the energy norm of A_eps.

    Raises:
        EmptySeedError: On an empty probe set.
        ProbeRadiusError: If some ||w0||_{L2_g} exceeds the radius.
    """
    if len(w0_set) == 0:
        raise EmptySeedError("probe set")

    op_eps = stepper_eps.basis.operator
    op_0 = stepper_0.basis.operator
    worst = 0.0

    for w0 in w0_set:
        size = op_0.l2_norm(w0)
        if size > radius * (1.0 + RADIUS_SLACK):
            raise ProbeRadiusError(size, radius)

        thin = time_one_map(transfer.extend(w0), stepper_eps)
        limit = transfer.extend(time_one_map(w0, stepper_0))
        worst = max(worst, op_eps.energy_norm(thin - limit))

    return worst

def smoothing_lipschitz(stepper: Stepper, pairs: Sequence[Tuple[np.ndarray, np.ndarray]]) -> float:
    """max ||T u - T w||_{energy} / ||u - w||_{L2}; identical pairs are skipped."""
    if len(pairs) < MIN_PROBE_PAIRS:
        logger.warning(f"Smoothing estimate from {len(pairs)} pairs, fewer than {MIN_PROBE_PAIRS}")

    op = stepper.basis.operator
    worst = 0.0

    for u, w in pairs:
        distance = op.l2_norm(u - w)
        if distance == 0.0:
            continue
        image_u = time_one_map(u, stepper)
        image_w = time_one_map(w, stepper)
        worst = max(worst, op.energy_norm(image_u - image_w) / distance)

    return worst

def linear_smoothing_bound(eigenvalues: np.ndarray) -> float:
    """max_i lambda_i^(1/2) e^(-lambda_i), the exact time-one smoothing constant without reaction."""
    return float(np.max(np.sqrt(eigenvalues) * np.exp(-eigenvalues)))

def limit_energy(u: np.ndarray, op_0: DiscreteOperator, reaction: ReactionTerm) -> float:
    """int g (|u'|^2/2 + mu u^2/2 - int_0^u f) for a limit field."""
    potential = reaction.primitive(u, op_0.x_nodes)
    return 0.5 * float(u @ (op_0.stiffness @ u)) - float(np.ones(op_0.size) @ (op_0.mass @ potential))

def energy_trace(stepper: Stepper, c: np.ndarray, t: float, sample_every: int = 1) -> np.ndarray:
    """Limit energy along a computed trajectory."""
    _, samples = stepper.trajectory(c, t, sample_every)
    op = stepper.basis.operator
    reaction = stepper.nonlinear_op.reaction
    return np.array([limit_energy(stepper.field(sample), op, reaction) for sample in samples])

def dissipativity_check(stepper: Stepper, count: int = 10, seed: int = 0, horizon: float = DISSIPATION_HORIZON) -> Tuple[bool, float]:
    """
    Integrates random Galerkin data with sup-norm 3M and reports whether every trajectory
    ends below M + 0.05, with the largest final sup-norm.
    """
    rng = np.random.default_rng(seed)
    M = stepper.nonlinear_op.reaction.M
    worst = 0.0

    for _ in range(count):
        c = rng.standard_normal(stepper.dimension) / np.arange(1, stepper.dimension + 1)
        u = stepper.field(c)
        c = c * (3.0 * M / np.max(np.abs(u)))
        final = stepper.field(stepper.flow(c, horizon))
        worst = max(worst, float(np.max(np.abs(final))))

    return worst <= M + SUP_NORM_SLACK, worst
