from dataclasses import dataclass
from typing import Callable, List, Sequence
import numpy as np
from .exceptions import ShortTrajectoryError

Map = Callable[[np.ndarray], np.ndarray]

def pseudo_defect(points: Sequence[np.ndarray], T: Map) -> float:
    """max_n ||z_{n+1} - T(z_n)|| in the Euclidean norm of R^m."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[0] < 2:
        raise ShortTrajectoryError(points.shape[0], 2)
    return max(float(np.linalg.norm(points[n + 1] - np.asarray(T(points[n]), dtype=float))) for n in range(points.shape[0] - 1))

@dataclass(frozen=True, eq=False)
class PseudoTrajectory:
    """
    Negative pseudo-trajectory z_{-N}, ..., z_0 (row n + N holds z_n).

    Built through `from_points` so that `delta` is always the recomputed defect.
    """
    points: np.ndarray
    delta: float

    @property
    def window(self) -> int:
        return self.points.shape[0] - 1

    @property
    def m(self) -> int:
        return self.points.shape[1]

    @classmethod
    def from_points(cls, points: Sequence[np.ndarray], T: Map) -> "PseudoTrajectory":
        points = np.atleast_2d(np.asarray(points, dtype=float)).copy()
        points.setflags(write=False)
        return cls(points, pseudo_defect(points, T))

def true_orbit(T: Map, start: np.ndarray, window: int) -> np.ndarray:
    points = [np.asarray(start, dtype=float)]
    for _ in range(window):
        points.append(np.asarray(T(points[-1]), dtype=float))
    return np.array(points)

def perturbed_orbits(
    T: Map,
    start: np.ndarray,
    window: int,
    deltas: Sequence[float],
    samples_per_delta: int,
    seed: int = 0
) -> List[PseudoTrajectory]:
    """
    z_{n+1} = T(z_n) + delta * u_n with u_n uniform in the cube [-1, 1]^m scaled by 1/sqrt(m),
    so each step defect stays below delta. Deterministic for a fixed seed.
    """
    rng = np.random.default_rng(seed)
    start = np.atleast_1d(np.asarray(start, dtype=float))
    scale = 1.0 / np.sqrt(start.size)
    samples = []

    for delta in deltas:
        for _ in range(samples_per_delta):
            points = [start]
            for _ in range(window):
                noise = rng.uniform(-1.0, 1.0, start.size) * scale
                points.append(np.asarray(T(points[-1]), dtype=float) + delta * noise)
            samples.append(PseudoTrajectory.from_points(points, T))

    return samples
