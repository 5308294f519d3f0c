from dataclasses import dataclass
from typing import Optional
import numpy as np
from core.operators.eigen_basis import EigenBasis
from core.operators.transfer_operators import TransferOperators

@dataclass(frozen=True, eq=False)
class CoordinateMap:
    """
    Reduced coordinates p of the leading m modes.

    A state with coordinates p has P_m-coefficients w = psi p. For thin-channel systems
    psi_ij = <phi_i^eps, E phi_j^0>, which lines the coordinates up with the limit modes;
    limit-space systems use psi = I.
    """
    psi: np.ndarray
    psi_inv: np.ndarray
    weights: np.ndarray

    @property
    def m(self) -> int:
        return len(self.weights)

    def to_modes(self, p: np.ndarray) -> np.ndarray:
        return np.asarray(p, dtype=float) @ self.psi.T

    def from_modes(self, w: np.ndarray) -> np.ndarray:
        return np.asarray(w, dtype=float) @ self.psi_inv.T

    def norm(self, p: np.ndarray) -> np.ndarray:
        """X^alpha norm of the P_m-component with coordinates p (row-wise)."""
        return np.sqrt(np.sum((self.weights * self.to_modes(p)) ** 2, axis=-1))

    def axis_extents(self, radius: float) -> np.ndarray:
        """Half-widths of the coordinate box enclosing {p : norm(p) <= radius}."""
        inverse = np.linalg.inv(self.weights[:, None] * self.psi)
        return radius * np.linalg.norm(inverse, axis=1)

def build_coordinate_map(basis: EigenBasis, m: int, basis_0: Optional[EigenBasis] = None, transfer: Optional[TransferOperators] = None) -> CoordinateMap:
    weights = basis.alpha_weights[:m]

    if transfer is None or basis_0 is None:
        identity = np.eye(m)
        return CoordinateMap(identity, identity, weights)

    lifted = transfer.extend(basis_0.vectors[:, :m])
    psi = basis.vectors[:, :m].T @ (basis.operator.mass @ lifted)
    return CoordinateMap(psi, np.linalg.inv(psi), weights)
