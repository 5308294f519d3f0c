import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple
import numpy as np
from core.operators.transfer_operators import TransferOperators
from .exceptions import EmptySampleError
from .nonlinear_operator import NonlinearOperator

FD_STEP = 1e-6
MIN_PROBE_PAIRS = 100
HOLDER_SCALES = tuple(2.0 ** -k for k in range(4, 11))

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class LipschitzRecord:
    L_F: float
    theta_F: float
    analytic_bound: float
    pairs_used: int

    @property
    def within_bound(self) -> bool:
        return self.L_F <= self.analytic_bound * (1.0 + 1e-10)

def _apply(op: NonlinearOperator, u: np.ndarray, transfer: TransferOperators) -> np.ndarray:
    if op.size == transfer.extend_E.shape[0] and len(u) != op.size:
        return op.apply(transfer.extend(u))
    return op.apply(u)

def _directional(op: NonlinearOperator, u: np.ndarray, v: np.ndarray, transfer: TransferOperators) -> np.ndarray:
    forward = _apply(op, u + FD_STEP * v, transfer)
    backward = _apply(op, u - FD_STEP * v, transfer)
    return (forward - backward) / (2.0 * FD_STEP)

def rho_beta_metrics(
    sample: Sequence[np.ndarray],
    transfer: TransferOperators,
    pair: Tuple[NonlinearOperator, NonlinearOperator],
    probes: Optional[Sequence[np.ndarray]] = None
) -> Tuple[float, float]:
    """
    Closeness of two prepared nonlinearities on limit fields u0.

    rho = max ||F_a(E u0) - E F_b(u0)||, beta = max ||DF_a(E u0) E v - E DF_b(u0) v|| / ||v||
    over probe directions v, both in L2 of the first operator's domain. Operators acting
    on limit fields skip the lift. Derivatives are central finite differences.
    """
    if not sample:
        raise EmptySampleError("sample")

    op_a, op_b = pair
    lift_a = op_a.size == transfer.extend_E.shape[0]
    lift_b = op_b.size == transfer.extend_E.shape[0]
    l2 = op_a.gate_basis.operator.l2_norm if lift_a else op_b.gate_basis.operator.l2_norm
    # L2_g norm of a limit field; E is an isometry
    limit_l2 = lambda v: l2(transfer.extend(v)) if lift_a else l2(v)

    def lifted(values, needs_lift_here):
        return values if not needs_lift_here else transfer.extend(values)

    rho, beta = 0.0, 0.0
    directions = list(probes) if probes is not None else []

    for u0 in sample:
        side_a = _apply(op_a, u0, transfer)
        side_b = lifted(_apply(op_b, u0, transfer), lift_a and not lift_b)
        rho = max(rho, l2(side_a - side_b))

        for v in directions:
            size = limit_l2(v)
            if size == 0.0:
                continue
            derivative_a = _directional(op_a, u0, v, transfer)
            derivative_b = lifted(_directional(op_b, u0, v, transfer), lift_a and not lift_b)
            beta = max(beta, l2(derivative_a - derivative_b) / size)

    logger.debug(f"rho={rho:.3e}, beta={beta:.3e} over {len(sample)} samples and {len(directions)} directions")
    return rho, beta

def holder_exponent_target(alpha: float, d: int) -> float:
    """min{1, 4 alpha / (d - 4 alpha)}, the Holder exponent of DF the growth bounds allow."""
    if d <= 4.0 * alpha:
        return 1.0
    return min(1.0, 4.0 * alpha / (d - 4.0 * alpha))

def analytic_lipschitz_bound(op: NonlinearOperator) -> float:
    """L_f lambda_1^(-alpha) + L_Theta sup|f| |Q|^(1/2)."""
    basis = op.gate_basis
    domain = basis.operator
    volume = float(np.ones(domain.size) @ (domain.mass @ np.ones(domain.size)))
    lambda_1 = float(basis.values[0])
    return op.reaction.Lf * lambda_1 ** (-basis.alpha) + op.cutoff.L_theta * op.reaction.sup_f * np.sqrt(volume)

def _holder_exponent(op: NonlinearOperator, rays: Sequence[Tuple[np.ndarray, np.ndarray]], directions: Sequence[np.ndarray]) -> float:
    """
    Median over rays (u, v) of the log-log slope of h -> max_q ||DF(u + h v) q - DF(u) q|| / ||q||_alpha
    against ||h v||_alpha.
    """
    l2 = op.gate_basis.operator.l2_norm
    slopes = []

    for u, v in rays:
        step = op.gate_norm(v)
        if step == 0.0:
            continue
        base = [op.derivative(u, q) for q in directions]
        lengths, defects = [], []
        for h in HOLDER_SCALES:
            defect = max(l2(op.derivative(u + h * v, q) - b) / op.gate_norm(q) for q, b in zip(directions, base))
            if defect > 0.0:
                lengths.append(h * step)
                defects.append(defect)
        if len(defects) >= 3:
            slopes.append(np.polyfit(np.log(lengths), np.log(defects), 1)[0])

    if not slopes:
        return float("nan")
    return float(np.median(slopes))

def lipschitz_estimator(
    op: NonlinearOperator,
    probes: Sequence[Tuple[np.ndarray, np.ndarray]],
    directions: Optional[Sequence[np.ndarray]] = None
) -> LipschitzRecord:
    """
    Empirical L_F = max ||F(u) - F(w)||_{L2} / ||u - w||_{X^alpha} over probe pairs, plus the
    Holder exponent of DF along the probe rays. Stores the record in `op.measured`.
    """
    if not probes:
        raise EmptySampleError("probe list")

    if len(probes) < MIN_PROBE_PAIRS:
        logger.warning(f"Lipschitz estimate from {len(probes)} probe pairs, fewer than {MIN_PROBE_PAIRS}")

    l2 = op.gate_basis.operator.l2_norm
    quotients = []

    for u, w in probes:
        distance = op.gate_norm(u - w)
        if distance == 0.0:
            continue
        quotients.append(l2(op.apply(u) - op.apply(w)) / distance)

    L_F = max(quotients, default=0.0)
    directions = list(directions) if directions is not None else [w - u for u, w in probes[:4]]
    directions = [q for q in directions if op.gate_norm(q) > 0.0]
    rays = [(u, w - u) for u, w in probes[:8]]
    theta_F = _holder_exponent(op, rays, directions) if directions else float("nan")

    record = LipschitzRecord(L_F, theta_F, analytic_lipschitz_bound(op), len(quotients))
    op.measured.update({"L_F": record.L_F, "theta_F": record.theta_F, "L_F_bound": record.analytic_bound})
    op.logger.info(f"Measured L_F={record.L_F:.6g} (bound {record.analytic_bound:.6g}), Holder exponent {record.theta_F:.3f}")
    return record
