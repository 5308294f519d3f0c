from dataclasses import dataclass
import numpy as np
import scipy.sparse as sp
from core.geometry.mapped_grid import MappedGrid
from .fem_assembly import assemble_1d

@dataclass(frozen=True, eq=False)
class TransferOperators:
    """
    Extension E (transverse-constant lifting) and cross-section average M.

    M uses the transverse mass weights w = M_z 1 normalised by their sum, so that
    M E = I and E M is the mass-orthogonal projector onto transverse-constant fields.
    """
    extend_E: sp.csr_matrix
    average_M: sp.csr_matrix
    weights: np.ndarray
    kappa: float = 1.0

    def extend(self, u: np.ndarray) -> np.ndarray:
        return self.extend_E @ u

    def average(self, u: np.ndarray) -> np.ndarray:
        return self.average_M @ u

def build_transfer(grid: MappedGrid) -> TransferOperators:
    identity = sp.identity(grid.nx, format="csr")
    weights = assemble_1d(grid.z, None, "mass") @ np.ones(grid.nz)
    extend_E = sp.kron(identity, sp.csr_matrix(np.ones((grid.nz, 1)))).tocsr()
    average_M = sp.kron(identity, sp.csr_matrix((weights / weights.sum())[None, :])).tocsr()
    return TransferOperators(extend_E, average_M, weights)
