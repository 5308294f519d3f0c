from typing import Callable, Optional
import numpy as np
from numpy.polynomial.legendre import leggauss
import scipy.sparse as sp

QUADRATURE_ORDER = 3

WeightFn = Optional[Callable[[np.ndarray], np.ndarray]]

def gauss_points(nodes: np.ndarray):
    """Per-cell Gauss points and weights, shape (cells, QUADRATURE_ORDER)."""
    points, weights = leggauss(QUADRATURE_ORDER)
    left, h = nodes[:-1], np.diff(nodes)
    xq = left[:, None] + 0.5 * h[:, None] * (points[None, :] + 1.0)
    wq = 0.5 * h[:, None] * weights[None, :]
    return xq, wq

def assemble_1d(nodes: np.ndarray, weight: WeightFn, kind: str) -> sp.csr_matrix:
    """
    Assembles a weighted P1 matrix on a 1D mesh.

    Args:
        nodes: Sorted mesh nodes.
        weight: Coefficient w(x), vectorized; None means w = 1.
        kind: "mass" for int w phi_i phi_j, "stiffness" for int w phi_i' phi_j',
              "advection" for int w phi_i phi_j'.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = len(nodes)
    xq, wq = gauss_points(nodes)
    h = np.diff(nodes)[:, None]
    w = wq if weight is None else wq * weight(xq)

    values = ((nodes[1:, None] - xq) / h, (xq - nodes[:-1, None]) / h)
    slopes = (-1.0 / h, 1.0 / h)

    rows, cols, data = [], [], []
    cells = np.arange(n - 1)

    for a in range(2):
        for b in range(2):
            if kind == "mass":
                local = np.sum(w * (values[a] * values[b]), axis=1)
            elif kind == "stiffness":
                local = np.sum(w * (slopes[a] * slopes[b]), axis=1)
            elif kind == "advection":
                local = np.sum(w * (values[a] * slopes[b]), axis=1)
            else:
                raise ValueError(f"Unknown 1D matrix kind: '{kind}'. Available kinds are: mass, stiffness, advection")
            rows.append(cells + a)
            cols.append(cells + b)
            data.append(local)

    matrix = sp.coo_matrix((np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
    return matrix.tocsr()
