import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union
import numpy as np
from core.manifold.reduced_system import ReducedSystem
from core.semiflow.exceptions import EmptySeedError, HypothesisViolationError
from .exceptions import EmptySetError
from .hausdorff import Metric, hausdorff_distance, sampling_resolution
from .pseudo_trajectory import Map

LAUNCH_OFFSET = 1e-4
ARRIVAL_DISTANCE = 1e-6
MAX_FLOW_TIME = 60.0
DEFAULT_SAMPLES_PER_UNIT = 20
HYPERBOLICITY_MARGIN = 1e-6

logger = logging.getLogger(__name__)

@dataclass(eq=False)
class ReducedAttractor:
    """
    Equilibria of a reduced time-one map plus sampled connecting orbits (one polyline per
    unstable branch), all in reduced coordinates.
    """
    equilibria: List[np.ndarray]
    multipliers: List[np.ndarray]
    polylines: List[np.ndarray] = field(default_factory=list)
    unresolved: int = 0

    @property
    def unstable_dims(self) -> List[int]:
        return [int(np.sum(np.abs(mu) > 1.0)) for mu in self.multipliers]

    @property
    def hyperbolic(self) -> List[bool]:
        return [bool(np.min(np.abs(np.abs(mu) - 1.0)) >= HYPERBOLICITY_MARGIN) for mu in self.multipliers]

    @property
    def points(self) -> np.ndarray:
        rows = list(self.equilibria)
        for polyline in self.polylines:
            rows.extend(polyline)
        return np.array(rows)

    def resolution(self, metric: Metric = None) -> float:
        return max((sampling_resolution(polyline, metric) for polyline in self.polylines), default=0.0)

def reduced_attractor(
    system: ReducedSystem,
    seeds: Sequence[np.ndarray],
    samples_per_unit: int = DEFAULT_SAMPLES_PER_UNIT,
    max_time: float = MAX_FLOW_TIME
) -> ReducedAttractor:
    """
    Equilibria of the reduced field from `seeds`, their time-one multipliers and the
    orbits launched 1e-4 off each equilibrium along the unstable eigen-directions, followed
    until they settle within 1e-6 of a stable equilibrium.

    Raises:
        EmptySeedError: If no seed converges to an equilibrium.
        HypothesisViolationError: If an equilibrium has a multiplier on the unit circle.
    """
    equilibria = system.equilibria(seeds)
    if not equilibria:
        raise EmptySeedError("converged reduced equilibrium list")

    jacobians = [system.time_one_jacobian(point) for point in equilibria]
    multipliers = [np.linalg.eigvals(jacobian) for jacobian in jacobians]
    attractor = ReducedAttractor(equilibria, multipliers)

    for index, (mu, hyperbolic) in enumerate(zip(multipliers, attractor.hyperbolic)):
        if not hyperbolic:
            worst = mu[np.argmin(np.abs(np.abs(mu) - 1.0))]
            raise HypothesisViolationError(index, float(np.abs(worst) - 1.0))

    stable = [point for point, dim in zip(equilibria, attractor.unstable_dims) if dim == 0]
    step_count = max(1, int(round(1.0 / (samples_per_unit * system.stepper.dt))))
    step_time = step_count * system.stepper.dt

    for index, jacobian in enumerate(jacobians):
        values, vectors = np.linalg.eig(jacobian)
        for j in np.flatnonzero(np.abs(values) > 1.0):
            direction = np.real(vectors[:, j])
            direction /= np.linalg.norm(direction)
            for sign in (1.0, -1.0):
                z = equilibria[index] + sign * LAUNCH_OFFSET * direction
                polyline = [equilibria[index], z]
                settled = False
                for _ in range(int(np.ceil(max_time / step_time))):
                    z = system.flow(z, step_time)
                    polyline.append(z)
                    if stable and min(np.linalg.norm(z - point) for point in stable) <= ARRIVAL_DISTANCE:
                        settled = True
                        break
                if not settled:
                    attractor.unresolved += 1
                    logger.warning(f"Reduced connection from equilibrium #{index} ({'+' if sign > 0 else '-'}) unresolved after t={max_time}")
                attractor.polylines.append(np.array(polyline))

    logger.info(f"Reduced attractor: {len(equilibria)} equilibria (unstable dims {attractor.unstable_dims}), {len(attractor.polylines)} branches")
    return attractor

@dataclass(frozen=True)
class AttractorBoundReport:
    hausdorff: float
    map_distance: float
    L_hat: float
    sampling_tolerance: float

    @property
    def bound(self) -> float:
        return self.L_hat * self.map_distance + self.sampling_tolerance

    @property
    def margin(self) -> float:
        return self.bound - self.hausdorff

    @property
    def holds(self) -> bool:
        return self.hausdorff <= self.bound

def _points_of(attractor: Union[ReducedAttractor, np.ndarray], what: str) -> np.ndarray:
    if isinstance(attractor, ReducedAttractor):
        for index, (mu, hyperbolic) in enumerate(zip(attractor.multipliers, attractor.hyperbolic)):
            if not hyperbolic:
                worst = mu[np.argmin(np.abs(np.abs(mu) - 1.0))]
                raise HypothesisViolationError(index, float(np.abs(worst) - 1.0))
        return attractor.points
    points = np.atleast_2d(np.asarray(attractor, dtype=float))
    if points.size == 0:
        raise EmptySetError(what)
    return points

def attractor_bound_check(
    attr_a: Union[ReducedAttractor, np.ndarray],
    attr_b: Union[ReducedAttractor, np.ndarray],
    T_a: Map,
    T_b: Map,
    L_hat: float,
    sample_points: np.ndarray,
    sampling_tolerance: Optional[float] = None,
    weights: Optional[np.ndarray] = None
) -> AttractorBoundReport:
    """
    dist_H(A, B) <= L_hat * sup ||T_a - T_b|| + sampling tolerance, with the map distance
    taken over `sample_points` (the sampling ball). The tolerance defaults to the coarser
    connection sampling resolution of the two attractors.

    Raises:
        HypothesisViolationError: If either attractor has a non-hyperbolic equilibrium.
        EmptySetError: If an attractor or the sampling set is empty.
    """
    points_a, points_b = _points_of(attr_a, "first attractor"), _points_of(attr_b, "second attractor")
    sample_points = np.atleast_2d(np.asarray(sample_points, dtype=float))
    if sample_points.size == 0:
        raise EmptySetError("sampling ball")

    scale = np.ones(points_a.shape[1]) if weights is None else np.asarray(weights, dtype=float)
    distance = hausdorff_distance(points_a, points_b, None if weights is None else scale)
    map_distance = max(float(np.linalg.norm(scale * (np.asarray(T_a(z)) - np.asarray(T_b(z))))) for z in sample_points)

    if sampling_tolerance is None:
        sampling_tolerance = max(
            attr.resolution(None if weights is None else scale) if isinstance(attr, ReducedAttractor) else 0.0
            for attr in (attr_a, attr_b)
        )

    report = AttractorBoundReport(distance, map_distance, float(L_hat), float(sampling_tolerance))
    logger.info(
        f"Attractor bound: dist_H={distance:.4e} vs L*||Ta-Tb||+tol={report.bound:.4e} "
        f"({'holds' if report.holds else 'VIOLATED'}, margin {report.margin:.3e})"
    )
    return report
