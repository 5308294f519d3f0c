import logging
from dataclasses import dataclass, replace
from typing import Optional
import numpy as np
import scipy.linalg as la
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from .discrete_operator import DiscreteOperator
from .exceptions import DegenerateClusterError, EigenSolverError, TruncationError
from .norm_kind import NormKind

DENSE_LIMIT = 4500
EIGEN_RESIDUAL_TOLERANCE = 1e-8
ORTHONORMALITY_TOLERANCE = 1e-10
DEGENERACY_TOLERANCE = 1e-8
DEGENERACY_WINDOW = 16
TAIL_TOLERANCE = 1e-8
ITERATIONS_PER_PAIR = 500

@dataclass(frozen=True, eq=False)
class EigenBasis:
    """
    Mass-orthonormal generalized eigenpairs (ascending) of a DiscreteOperator.

    `complete` marks a basis spanning the whole discrete space, for which X^alpha
    norms of arbitrary fields are exact.
    """
    values: np.ndarray
    vectors: np.ndarray
    operator: DiscreteOperator
    alpha: float
    complete: bool = False

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def alpha_weights(self) -> np.ndarray:
        return self.values ** self.alpha

    def coefficients(self, u: np.ndarray) -> np.ndarray:
        return self.vectors.T @ (self.operator.mass @ u)

    def synthesize(self, coefficients: np.ndarray) -> np.ndarray:
        return self.vectors[:, :len(coefficients)] @ coefficients

    def tail_fraction(self, u: np.ndarray, coefficients: Optional[np.ndarray] = None) -> float:
        if coefficients is None:
            coefficients = self.coefficients(u)
        total = float(u @ (self.operator.mass @ u))
        if total == 0.0:
            return 0.0
        return max(total - float(coefficients @ coefficients), 0.0) / total

    def alpha_norm(self, u: np.ndarray, strict: bool = True) -> float:
        coefficients = self.coefficients(u)

        if strict and not self.complete:
            tail = self.tail_fraction(u, coefficients)
            if tail > TAIL_TOLERANCE:
                raise TruncationError(tail, self.count)

        return float(np.sqrt(np.sum((self.alpha_weights * coefficients) ** 2)))

    def coefficient_alpha_norm(self, coefficients: np.ndarray) -> np.ndarray:
        """X^alpha norm from coefficients; works column-wise on 2D arrays."""
        weights = self.alpha_weights[:coefficients.shape[0]]
        if coefficients.ndim == 1:
            return np.sqrt(np.sum((weights * coefficients) ** 2))
        return np.sqrt(np.sum((weights[:, None] * coefficients) ** 2, axis=0))

    def coordinate_norm(self, p: np.ndarray) -> np.ndarray:
        """Weighted coordinate norm |p|_alpha = (sum lambda_i^(2 alpha) p_i^2)^(1/2) over the leading modes."""
        p = np.asarray(p, dtype=float)
        weights = self.alpha_weights[:p.shape[-1]]
        return np.sqrt(np.sum((weights * p) ** 2, axis=-1))

    def truncated(self, k: int) -> "EigenBasis":
        k = min(k, self.count)
        return replace(self, values=self.values[:k], vectors=self.vectors[:, :k], complete=self.complete and k == self.count)

    def below(self, cutoff: float) -> "EigenBasis":
        return self.truncated(int(np.searchsorted(self.values, cutoff, side="left")))

    def flipped(self, signs: np.ndarray) -> "EigenBasis":
        return replace(self, vectors=self.vectors * signs[None, :])

def _normalize_signs(vectors: np.ndarray, mass) -> np.ndarray:
    means = np.ones(vectors.shape[0]) @ (mass @ vectors)
    for j in range(vectors.shape[1]):
        column = vectors[:, j]
        scale = np.max(np.abs(column))
        if abs(means[j]) > 1e-10 * scale:
            sign = np.sign(means[j])
        else:
            significant = np.nonzero(np.abs(column) > 1e-8 * scale)[0]
            sign = np.sign(column[significant[0]])
        vectors[:, j] *= sign
    return vectors

def eigs(
    op: DiscreteOperator,
    m: Optional[int] = None,
    dense_limit: int = DENSE_LIMIT,
    check_degenerate: bool = True
) -> EigenBasis:
    """
    First m generalized eigenpairs of (stiffness, mass), ascending and mass-orthonormal.

    Dense LAPACK for sizes up to dense_limit (m=None returns the complete basis),
    shift-invert Lanczos with a fixed start vector otherwise.

    Raises:
        EigenSolverError: Non-convergence or residuals above tolerance.
        DegenerateClusterError: Near-coincident eigenvalues inside the leading modes.
    """
    logger = logging.getLogger(__name__)
    n = op.size
    m = n if m is None else m

    if m > n:
        raise ValueError(f"Requested {m} eigenpairs from a {n}-dimensional operator")

    if n <= dense_limit:
        subset = None if m == n else [0, m - 1]
        values, vectors = la.eigh(op.stiffness.toarray(), op.mass.toarray(), subset_by_index=subset)
    else:
        if m >= n - 1:
            raise ValueError(f"Complete bases need dense_limit >= {n}")
        try:
            values, vectors = eigsh(
                op.stiffness, k=m, M=op.mass, sigma=0.5 * op.config.mu, which="LM",
                v0=np.ones(n), tol=1e-10, maxiter=ITERATIONS_PER_PAIR * m
            )
        except ArpackNoConvergence as e:
            residuals = [np.inf] * (m - len(e.eigenvalues))
            raise EigenSolverError(residuals) from e
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]

    vectors = _normalize_signs(np.array(vectors, dtype=float), op.mass)

    products = op.stiffness @ vectors
    residual = np.linalg.norm(products - op.mass @ vectors * values[None, :], axis=0)
    scale = (op.stiffness_norm + np.abs(values) * op.mass_norm) * np.linalg.norm(vectors, axis=0)
    relative = residual / scale
    if np.max(relative) > EIGEN_RESIDUAL_TOLERANCE:
        raise EigenSolverError(relative)

    window = min(m, 64)
    gram = vectors[:, :window].T @ (op.mass @ vectors[:, :window])
    if np.max(np.abs(gram - np.eye(window))) > ORTHONORMALITY_TOLERANCE:
        raise EigenSolverError(relative, "Eigenvectors lost mass-orthonormality")

    if check_degenerate:
        leading = values[:min(m, DEGENERACY_WINDOW)]
        gaps = np.diff(leading)
        close = np.nonzero(gaps < DEGENERACY_TOLERANCE * leading[:-1])[0]
        if close.size:
            i = int(close[0])
            raise DegenerateClusterError(i + 1, (leading[i], leading[i + 1]))

    logger.debug(f"{op.kind.value}: {m} eigenpairs, lambda_1={values[0]:.10g}, worst residual {np.max(relative):.2e}")
    return EigenBasis(values, vectors, op, op.config.alpha, complete=(m == n))

def align_signs(basis_eps: EigenBasis, basis_0: EigenBasis, transfer, m: int) -> EigenBasis:
    """Flips the leading eps-modes so that <E phi_i^0, phi_i^eps> >= 0."""
    lifted = transfer.extend(basis_0.vectors[:, :m])
    overlaps = np.einsum("ij,ij->j", basis_eps.vectors[:, :m], basis_eps.operator.mass @ lifted)
    signs = np.ones(basis_eps.count)
    signs[:m] = np.where(overlaps < 0, -1.0, 1.0)
    return basis_eps.flipped(signs)

def norm_eval(u: np.ndarray, basis: EigenBasis, which: NormKind) -> float:
    if isinstance(which, str):
        which = NormKind.from_string(which)

    if which == NormKind.L2:
        return basis.operator.l2_norm(u)
    elif which == NormKind.HEPS1:
        return basis.operator.energy_norm(u)
    return basis.alpha_norm(u, strict=True)
