import logging
from dataclasses import dataclass, field
from typing import List, Sequence
import numpy as np
from .exceptions import EmptySeedError
from .stepper import Stepper

NEWTON_TOLERANCE = 1e-10
NEWTON_MAX_ITERATIONS = 50
DEDUP_DISTANCE = 1e-6
GAP_TOLERANCE = 1e-6

logger = logging.getLogger(__name__)

@dataclass(eq=False)
class EquilibriumSet:
    """
    Equilibria in Galerkin coefficients, ordered by their first coefficient.

    `spectra` are the linearization eigenvalues in descending order and `unstable_directions`
    the matching eigenvectors (coefficient space) of the positive ones.
    """
    stepper: Stepper
    coefficients: List[np.ndarray]
    residuals: List[float]
    spectra: List[np.ndarray]
    unstable_directions: List[np.ndarray]
    failed_seeds: List[int] = field(default_factory=list)
    gap_tol: float = GAP_TOLERANCE

    @property
    def count(self) -> int:
        return len(self.coefficients)

    @property
    def points(self) -> List[np.ndarray]:
        return [self.stepper.field(c) for c in self.coefficients]

    @property
    def unstable_dims(self) -> List[int]:
        return [int(np.sum(spectrum > self.gap_tol)) for spectrum in self.spectra]

    @property
    def hyperbolic(self) -> List[bool]:
        return [bool(np.min(np.abs(spectrum)) >= self.gap_tol) for spectrum in self.spectra]

    def stable_indices(self) -> List[int]:
        return [i for i, dim in enumerate(self.unstable_dims) if dim == 0]

    def nearest(self, c: np.ndarray) -> int:
        return int(np.argmin([np.linalg.norm(c - point) for point in self.coefficients]))

def newton_equilibrium(stepper: Stepper, c: np.ndarray):
    """
    Newton iteration on -Lambda c + N(c) = 0.

    Returns (coefficients, residual norm, converged).
    """
    for _ in range(NEWTON_MAX_ITERATIONS):
        residual = stepper.vector_field(c)
        norm = float(np.linalg.norm(residual))
        if norm <= NEWTON_TOLERANCE:
            return c, norm, True
        try:
            c = c - np.linalg.solve(stepper.jacobian(c), residual)
        except np.linalg.LinAlgError:
            return c, norm, False
        if not np.all(np.isfinite(c)):
            return c, np.inf, False

    norm = float(np.linalg.norm(stepper.vector_field(c)))
    return c, norm, norm <= NEWTON_TOLERANCE

def linearization_spectrum(stepper: Stepper, c: np.ndarray):
    """Eigenvalues (descending) and eigenvectors of the symmetric part of the Jacobian."""
    jacobian = stepper.jacobian(c)
    values, vectors = np.linalg.eigh(0.5 * (jacobian + jacobian.T))
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]

def find_equilibria(seeds: Sequence[np.ndarray], stepper: Stepper) -> EquilibriumSet:
    """
    Newton from each seed field; converged points closer than 1e-6 in L2 are merged.
    Seeds that do not converge are recorded in `failed_seeds`.
    """
    if len(seeds) == 0:
        raise EmptySeedError()

    found, residuals, failed = [], [], []

    for index, seed in enumerate(seeds):
        c, residual, converged = newton_equilibrium(stepper, stepper.coefficients(np.asarray(seed, dtype=float)))
        if not converged:
            logger.warning(f"Newton did not converge from seed #{index} (residual {residual:.3e})")
            failed.append(index)
            continue
        if any(np.linalg.norm(c - other) <= DEDUP_DISTANCE for other in found):
            continue
        found.append(c)
        residuals.append(residual)

    order = np.argsort([c[0] for c in found])
    found = [found[i] for i in order]
    residuals = [residuals[i] for i in order]

    spectra, directions = [], []
    for c in found:
        values, vectors = linearization_spectrum(stepper, c)
        spectra.append(values)
        directions.append(vectors[:, values > GAP_TOLERANCE])

    equilibria = EquilibriumSet(stepper, found, residuals, spectra, directions, failed)
    logger.info(f"Found {equilibria.count} equilibria with unstable dimensions {equilibria.unstable_dims}")
    return equilibria
