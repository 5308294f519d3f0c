from dataclasses import dataclass, replace
from functools import cached_property
from typing import Tuple
import numpy as np
from scipy.interpolate import RegularGridInterpolator
from core.operators.eigen_basis import EigenBasis
from .coordinates import CoordinateMap

@dataclass(frozen=True, eq=False)
class GraphFn:
    """
    Graph p -> Phi(p) of an invariant manifold over the leading m modes.

    `values[i1, ..., im, :]` are the coefficients of the remaining Galerkin modes at the
    tensor-grid node (axes[0][i1], ..., axes[m-1][im]); between nodes Phi is multilinear and
    it vanishes wherever the coordinate norm reaches `support_radius`.
    """
    m: int
    axes: Tuple[np.ndarray, ...]
    values: np.ndarray
    basis: EigenBasis
    coordinates: CoordinateMap
    support_radius: float
    lipschitz_est: float = float("nan")
    iterations: int = 0

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(axis) for axis in self.axes)

    @property
    def codimension(self) -> int:
        return self.values.shape[-1]

    @cached_property
    def nodes(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.column_stack([axis.ravel() for axis in mesh])

    @property
    def flat_values(self) -> np.ndarray:
        return self.values.reshape(-1, self.codimension)

    @cached_property
    def q_weights(self) -> np.ndarray:
        return self.basis.alpha_weights[self.m:self.m + self.codimension]

    @cached_property
    def _interpolator(self) -> RegularGridInterpolator:
        return RegularGridInterpolator(self.axes, self.values, method="linear", bounds_error=False, fill_value=0.0)

    def __call__(self, p: np.ndarray) -> np.ndarray:
        p = np.atleast_2d(np.asarray(p, dtype=float))
        values = self._interpolator(p)
        values[self.coordinates.norm(p) >= self.support_radius] = 0.0
        return values

    def q_norm(self, q: np.ndarray) -> np.ndarray:
        """X^alpha norm of complement-mode coefficients (row-wise)."""
        return np.sqrt(np.sum((self.q_weights * q) ** 2, axis=-1))

    def state(self, p: np.ndarray) -> np.ndarray:
        """Galerkin coefficients of the manifold point over p (one row per point)."""
        p = np.atleast_2d(np.asarray(p, dtype=float))
        return np.hstack([self.coordinates.to_modes(p), self(p)])

    def membership_defect(self, c: np.ndarray) -> float:
        """||Q c - Phi(p(c))|| for Galerkin coefficients c."""
        p = self.coordinates.from_modes(c[:self.m])
        return float(self.q_norm(c[self.m:] - self(p)[0]))

    def with_values(self, values: np.ndarray, **changes) -> "GraphFn":
        return replace(self, values=values, **changes)
