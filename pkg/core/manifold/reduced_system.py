import logging
from typing import List, Optional, Sequence
import numpy as np
from core.semiflow.stepper import Stepper
from .graph_fn import GraphFn

FD_STEP = 1e-6
NEWTON_TOLERANCE = 1e-10
NEWTON_MAX_ITERATIONS = 50
DEDUP_DISTANCE = 1e-6

class ReducedSystem:
    """
    Dynamics on the graph in reduced coordinates z:
    z' = -psi^{-1} Lambda_m psi z + H(z), H(z) = psi^{-1} [V^T M F(state(z))]_{1..m}.

    Integrated with the stepper's exponential scheme in the mode variables w = psi z.
    `metric_weights` define the common coordinate metric |z| = |weights * z|.
    """
    def __init__(self, graph: GraphFn, stepper: Stepper, metric_weights: Optional[np.ndarray] = None):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.graph = graph
        self.stepper = stepper
        self.m = graph.m
        self.coordinates = graph.coordinates
        self.metric_weights = graph.coordinates.weights if metric_weights is None else np.asarray(metric_weights[:self.m], dtype=float)
        self.linear = stepper.basis.values[:self.m]
        self.decay = stepper.decay[:self.m]
        self.phi1 = stepper.phi1[:self.m]

    @property
    def Rprime(self) -> float:
        return self.graph.support_radius

    def metric_norm(self, z: np.ndarray) -> float:
        return float(np.linalg.norm(self.metric_weights * z))

    def _modal_term(self, w: np.ndarray, time: float = 0.0) -> np.ndarray:
        z = self.coordinates.from_modes(w)
        return self.stepper.nonlinear_term(self.graph.state(z)[0], time)[:self.m]

    def H(self, z: np.ndarray) -> np.ndarray:
        return self.coordinates.from_modes(self._modal_term(self.coordinates.to_modes(z)))

    def vector_field(self, z: np.ndarray) -> np.ndarray:
        w = self.coordinates.to_modes(z)
        return self.coordinates.from_modes(-self.linear * w + self._modal_term(w))

    def flow(self, z: np.ndarray, t: float = 1.0) -> np.ndarray:
        w = self.coordinates.to_modes(np.asarray(z, dtype=float))
        for k in range(int(round(t / self.stepper.dt))):
            w = self.decay * w + self.phi1 * self._modal_term(w, k * self.stepper.dt)
        return self.coordinates.from_modes(w)

    def time_one(self, z: np.ndarray) -> np.ndarray:
        return self.flow(z, 1.0)

    def time_one_jacobian(self, z: np.ndarray, step: float = FD_STEP) -> np.ndarray:
        """Central-difference Jacobian of the time-one map."""
        z = np.asarray(z, dtype=float)
        columns = []
        for j in range(self.m):
            offset = np.zeros(self.m)
            offset[j] = step
            columns.append((self.time_one(z + offset) - self.time_one(z - offset)) / (2.0 * step))
        return np.column_stack(columns)

    def _field_jacobian(self, z: np.ndarray) -> np.ndarray:
        columns = []
        for j in range(self.m):
            offset = np.zeros(self.m)
            offset[j] = FD_STEP
            columns.append((self.vector_field(z + offset) - self.vector_field(z - offset)) / (2.0 * FD_STEP))
        return np.column_stack(columns)

    def equilibria(self, seeds: Sequence[np.ndarray]) -> List[np.ndarray]:
        """Zeros of the reduced vector field by Newton with a finite-difference Jacobian."""
        found = []
        for seed in seeds:
            z = np.asarray(seed, dtype=float).copy()
            for _ in range(NEWTON_MAX_ITERATIONS):
                residual = self.vector_field(z)
                if np.linalg.norm(residual) <= NEWTON_TOLERANCE:
                    break
                try:
                    z = z - np.linalg.solve(self._field_jacobian(z), residual)
                except np.linalg.LinAlgError:
                    break
            if np.linalg.norm(self.vector_field(z)) > 1e-8:
                self.logger.warning(f"Reduced Newton did not converge from seed {seed}")
                continue
            if not any(np.linalg.norm(z - other) <= DEDUP_DISTANCE for other in found):
                found.append(z)
        return sorted(found, key=lambda point: tuple(point))

def reduced_time_one(z: np.ndarray, system: ReducedSystem, dt: Optional[float] = None) -> np.ndarray:
    """T-bar(z): one time unit of the reduced flow."""
    if dt is not None and not np.isclose(dt, system.stepper.dt):
        raise ValueError(f"Reduced systems integrate with the stepper's dt={system.stepper.dt}, got {dt}")
    return system.time_one(z)
