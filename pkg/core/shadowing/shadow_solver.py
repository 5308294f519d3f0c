import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import numpy as np
from scipy.linalg import lstsq, orth
from core.semiflow.exceptions import HypothesisViolationError
from .exceptions import EmptySetError, OutsideNeighborhoodError, ShadowNewtonError, ShortTrajectoryError
from .pseudo_trajectory import Map, PseudoTrajectory

MIN_WINDOW = 10
DEFAULT_WINDOW = 50
ORBIT_TOLERANCE = 1e-12
ACCEPT_TOLERANCE = 1e-10
MAX_NEWTON_ITERATIONS = 30
DIVERGENCE_RESIDUAL = 1e6
FD_STEP = 1e-6
HYPERBOLICITY_MARGIN = 1e-6
STABILITY_VARIATION = 0.5

logger = logging.getLogger(__name__)

Derivative = Callable[[np.ndarray], np.ndarray]

def finite_difference_jacobian(T: Map, step: float = FD_STEP) -> Derivative:
    """Central-difference derivative of a map on R^m."""
    def derivative(z: np.ndarray) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=float))
        columns = []
        for j in range(z.size):
            offset = np.zeros(z.size)
            offset[j] = step
            columns.append((np.asarray(T(z + offset), dtype=float) - np.asarray(T(z - offset), dtype=float)) / (2.0 * step))
        return np.column_stack(columns)
    return derivative

def shadow_distance(a: np.ndarray, b: np.ndarray) -> float:
    """l^infinity distance of two sequences of equal length (max over the window)."""
    a, b = np.atleast_2d(a), np.atleast_2d(b)
    if a.shape != b.shape:
        raise ValueError(f"Sequences have shapes {a.shape} and {b.shape}")
    return float(np.max(np.linalg.norm(a - b, axis=1)))

@dataclass(frozen=True)
class ShadowingContext:
    """
    Equilibria of T used for the boundary closures, plus the sampled neighbourhood the
    pseudo-orbits must stay in (attractor samples and radius; unchecked when None).
    `close_right=False` drops the stable-subspace closure of the newest point.
    """
    equilibria: np.ndarray
    attractor_points: Optional[np.ndarray] = None
    neighborhood_radius: Optional[float] = None
    close_right: bool = True

@dataclass(frozen=True, eq=False)
class ShadowResult:
    orbit: np.ndarray
    sup_dist: float
    L_ratio: float
    residual_history: List[float] = field(default_factory=list)

    @property
    def orbit_defect(self) -> float:
        return self.residual_history[-1] if self.residual_history else 0.0

def _subspace_rows(jacobian: np.ndarray, keep_stable: bool) -> np.ndarray:
    """
    Real row basis of the functionals of V^{-1} belonging to the stable (|mu| < 1) or
    unstable eigen-directions of the linearization.
    """
    values, vectors = np.linalg.eig(np.atleast_2d(jacobian))
    moduli = np.abs(values)
    worst = int(np.argmin(np.abs(moduli - 1.0)))
    if abs(moduli[worst] - 1.0) < HYPERBOLICITY_MARGIN:
        raise HypothesisViolationError(worst, float(moduli[worst] - 1.0))

    selected = moduli < 1.0 if keep_stable else moduli > 1.0
    if not selected.any():
        return np.zeros((0, len(values)))
    rows = np.linalg.inv(vectors)[selected]
    real_rows = np.vstack([rows.real, rows.imag])
    return orth(real_rows.T).T

def _nearest(points: np.ndarray, z: np.ndarray) -> Tuple[int, float]:
    distances = np.linalg.norm(points - z, axis=1)
    index = int(np.argmin(distances))
    return index, float(distances[index])

def _check_neighborhood(pseudo: PseudoTrajectory, context: ShadowingContext):
    if context.attractor_points is None or context.neighborhood_radius is None:
        return
    cloud = np.atleast_2d(context.attractor_points)
    worst = max(_nearest(cloud, z)[1] for z in pseudo.points)
    if worst > context.neighborhood_radius:
        raise OutsideNeighborhoodError(worst, context.neighborhood_radius)

def _residual(x: np.ndarray, T: Map, closures: List[Tuple[int, np.ndarray, np.ndarray]]) -> np.ndarray:
    orbit = [x[n + 1] - np.asarray(T(x[n]), dtype=float) for n in range(x.shape[0] - 1)]
    pinned = [rows @ (x[index] - anchor) for index, rows, anchor in closures]
    return np.concatenate(orbit + pinned)

def _jacobian(x: np.ndarray, DT: Derivative, closures: List[Tuple[int, np.ndarray, np.ndarray]]) -> np.ndarray:
    """Block-bidiagonal sequence-space Jacobian with the closure rows appended."""
    count, m = x.shape
    blocks = np.zeros(((count - 1) * m, count * m))
    identity = np.eye(m)
    for n in range(count - 1):
        blocks[n * m:(n + 1) * m, n * m:(n + 1) * m] = -np.atleast_2d(DT(x[n]))
        blocks[n * m:(n + 1) * m, (n + 1) * m:(n + 2) * m] = identity

    rows = [blocks]
    for index, closure, _ in closures:
        block = np.zeros((closure.shape[0], count * m))
        block[:, index * m:(index + 1) * m] = closure
        rows.append(block)
    return np.vstack(rows)

def shadow_solve(
    T: Map,
    DT: Derivative,
    pseudo: PseudoTrajectory,
    context: ShadowingContext,
    tolerance: float = ORBIT_TOLERANCE,
    max_iterations: int = MAX_NEWTON_ITERATIONS
) -> ShadowResult:
    """
    序列空间牛顿法 (sequence-space Newton shadowing).

    Solves x_{n+1} = T(x_n) over the window starting from the pseudo-orbit. The oldest point is
    pinned to the affine unstable subspace of the equilibrium nearest to it and the newest
    point to the affine stable subspace of its nearest equilibrium. Each correction is the
    minimum-norm least-squares step.

    Raises:
        ShortTrajectoryError: If the window is shorter than 10.
        OutsideNeighborhoodError: If the pseudo-orbit leaves the sampled neighbourhood.
        HypothesisViolationError: If a closing equilibrium is not hyperbolic.
        ShadowNewtonError: On divergence, carrying the residual history.
    """
    if pseudo.window < MIN_WINDOW:
        raise ShortTrajectoryError(pseudo.window + 1, MIN_WINDOW + 1)
    _check_neighborhood(pseudo, context)

    equilibria = np.atleast_2d(np.asarray(context.equilibria, dtype=float))
    if equilibria.shape[0] == 0:
        raise EmptySetError("equilibrium list")

    left, _ = _nearest(equilibria, pseudo.points[0])
    closures = [(0, _subspace_rows(DT(equilibria[left]), keep_stable=True), equilibria[left])]
    if context.close_right:
        right, _ = _nearest(equilibria, pseudo.points[-1])
        closures.append((pseudo.window, _subspace_rows(DT(equilibria[right]), keep_stable=False), equilibria[right]))

    x = np.array(pseudo.points, dtype=float)
    shape = x.shape
    history = []

    for _ in range(max_iterations):
        residual = _residual(x, T, closures)
        norm = float(np.max(np.abs(residual))) if residual.size else 0.0
        history.append(norm)
        if norm <= tolerance:
            break
        if not np.isfinite(norm) or norm > DIVERGENCE_RESIDUAL:
            raise ShadowNewtonError(history)
        correction = lstsq(_jacobian(x, DT, closures), -residual, lapack_driver="gelsd")[0]
        x = x + correction.reshape(shape)
    else:
        if history[-1] > ACCEPT_TOLERANCE:
            raise ShadowNewtonError(history)
        logger.warning(f"Shadow orbit stalled at residual {history[-1]:.3e} above {tolerance:.1e}")

    sup_dist = shadow_distance(x, pseudo.points)
    if pseudo.delta > 0:
        ratio = sup_dist / pseudo.delta
    else:
        ratio = 0.0 if sup_dist == 0 else float("inf")
    return ShadowResult(x, sup_dist, ratio, history)

@dataclass(frozen=True)
class ShadowingEstimate:
    L_hat: float
    by_decade: Dict[int, float]
    samples: int

    @property
    def variation(self) -> float:
        ratios = [value for value in self.by_decade.values() if value > 0]
        if len(ratios) < 2:
            return 0.0
        return max(ratios) / min(ratios) - 1.0

    @property
    def stable(self) -> bool:
        return self.variation <= STABILITY_VARIATION

def lipschitz_shadowing_estimate(T: Map, DT: Derivative, samples: Sequence[PseudoTrajectory], context: ShadowingContext) -> ShadowingEstimate:
    """
    L-hat = max L_ratio over the samples, with the per-decade maxima used to judge
    whether the ratio stays put as delta shrinks.
    """
    if not samples:
        raise EmptySetError("pseudo-trajectory sample")

    by_decade: Dict[int, float] = {}
    for pseudo in samples:
        if pseudo.delta <= 0:
            continue
        result = shadow_solve(T, DT, pseudo, context)
        decade = int(np.round(np.log10(pseudo.delta)))
        by_decade[decade] = max(by_decade.get(decade, 0.0), result.L_ratio)

    L_hat = max(by_decade.values()) if by_decade else 0.0
    estimate = ShadowingEstimate(L_hat, dict(sorted(by_decade.items())), len(samples))
    logger.info(f"Lipschitz shadowing estimate L={L_hat:.4g} over {len(samples)} samples (variation {estimate.variation:.2%})")
    return estimate

def window_sensitivity(estimate: ShadowingEstimate, doubled: ShadowingEstimate) -> float:
    """Relative change of L-hat when the window is doubled; 0 when both vanish."""
    if estimate.L_hat == 0.0:
        return 0.0 if doubled.L_hat == 0.0 else float("inf")
    return abs(doubled.L_hat - estimate.L_hat) / estimate.L_hat
