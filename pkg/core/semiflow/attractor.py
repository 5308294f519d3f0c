import logging
from dataclasses import dataclass, field
from typing import List
import numpy as np
from .equilibria import EquilibriumSet
from .exceptions import HypothesisViolationError, SupNormViolationError

LAUNCH_OFFSET = 1e-4
ARRIVAL_DISTANCE = 1e-8
STEP_BUDGET = 10_000
SUP_NORM_SLACK = 0.05
DEFAULT_SAMPLES_PER_UNIT = 20

@dataclass(eq=False)
class Connection:
    source: int
    target: int
    times: np.ndarray
    samples: np.ndarray

@dataclass(eq=False)
class AttractorApprox:
    """Equilibria plus sampled connecting orbits, all in Galerkin coefficients."""
    equilibria: EquilibriumSet
    connections: List[Connection]
    unresolved: List[int] = field(default_factory=list)
    norm_tag: str = "Xalpha"
    max_sup_norm: float = 0.0

    def coefficient_points(self) -> np.ndarray:
        """All equilibria and connection samples stacked row-wise."""
        rows = list(self.equilibria.coefficients)
        for connection in self.connections:
            rows.extend(connection.samples)
        return np.array(rows)

    def fields(self) -> np.ndarray:
        return self.coefficient_points() @ self.equilibria.stepper.basis.vectors.T

def _follow(equilibria: EquilibriumSet, c: np.ndarray, source: int, samples_per_unit: int):
    stepper = equilibria.stepper
    stable = equilibria.stable_indices()
    sample_every = max(1, stepper.steps_per_unit // samples_per_unit)
    times, samples = [0.0], [c.copy()]

    for k in range(1, STEP_BUDGET + 1):
        c = stepper.step(c, (k - 1) * stepper.dt)
        if k % sample_every == 0:
            times.append(k * stepper.dt)
            samples.append(c.copy())

        distances = [np.linalg.norm(c - equilibria.coefficients[i]) for i in stable]
        if distances and min(distances) <= ARRIVAL_DISTANCE:
            times.append(k * stepper.dt)
            samples.append(c.copy())
            target = stable[int(np.argmin(distances))]
            return Connection(source, target, np.array(times), np.array(samples))

    return None

def approximate_attractor(
    equilibria: EquilibriumSet,
    samples_per_unit: int = DEFAULT_SAMPLES_PER_UNIT,
    norm_tag: str = "Xalpha"
) -> AttractorApprox:
    """
    Launches +-1e-4 perturbations along each unstable eigen-direction and follows them until
    they come within 1e-8 of a stable equilibrium or the step budget runs out.

    Raises:
        HypothesisViolationError: If an equilibrium is not hyperbolic.
        SupNormViolationError: If some attractor sample exceeds M + 0.05 in sup norm.
    """
    logger = logging.getLogger(__name__)

    for index, (hyperbolic, spectrum) in enumerate(zip(equilibria.hyperbolic, equilibria.spectra)):
        if not hyperbolic:
            raise HypothesisViolationError(index, float(spectrum[np.argmin(np.abs(spectrum))]))

    connections, unresolved = [], []

    for index, c in enumerate(equilibria.coefficients):
        directions = equilibria.unstable_directions[index]
        for j in range(directions.shape[1]):
            for sign in (1.0, -1.0):
                connection = _follow(equilibria, c + sign * LAUNCH_OFFSET * directions[:, j], index, samples_per_unit)
                if connection is None:
                    logger.warning(f"Connection from equilibrium #{index} along direction {j} ({'+' if sign > 0 else '-'}) unresolved within {STEP_BUDGET} steps")
                    unresolved.append(index)
                else:
                    connections.append(connection)

    attractor = AttractorApprox(equilibria, connections, unresolved, norm_tag)
    fields = attractor.fields()
    attractor.max_sup_norm = float(np.max(np.abs(fields))) if fields.size else 0.0

    bound = equilibria.stepper.nonlinear_op.reaction.M + SUP_NORM_SLACK
    if attractor.max_sup_norm > bound:
        raise SupNormViolationError(attractor.max_sup_norm, bound)

    logger.info(f"Attractor: {equilibria.count} equilibria, {len(connections)} connections, {len(unresolved)} unresolved")
    return attractor
