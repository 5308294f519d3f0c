from typing import Optional, Union
import numpy as np
from scipy.linalg import cholesky
from scipy.spatial.distance import directed_hausdorff
from .exceptions import EmptySetError

Metric = Optional[Union[str, np.ndarray]]

def _as_points(points, what: str) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        raise EmptySetError(what)
    return points.reshape(-1, 1) if points.ndim == 1 else points

def _metric_factor(metric: Metric, dimension: int) -> Optional[np.ndarray]:
    """Matrix L with ||a - b||_metric = ||(a - b) L||_2, None for the Euclidean metric."""
    if metric is None or (isinstance(metric, str) and metric == "euclidean"):
        return None
    if isinstance(metric, str):
        raise ValueError(f"Unknown metric '{metric}'. Use 'euclidean', a weight vector or a Gram matrix.")

    metric = np.asarray(metric, dtype=float)
    if metric.ndim == 1:
        return np.diag(metric)
    if metric.shape != (dimension, dimension):
        raise ValueError(f"Gram matrix of shape {metric.shape} does not match dimension {dimension}")
    return cholesky(metric, lower=True)

def hausdorff_distance(A, B, metric: Metric = None) -> float:
    """
    Symmetric Hausdorff distance of two finite point sets (rows). `metric` is None or
    'euclidean', a diagonal weight vector, or a symmetric positive definite Gram matrix
    (e.g. the energy form on nodal fields).

    Raises:
        EmptySetError: If either set is empty.
    """
    A, B = _as_points(A, "first point set"), _as_points(B, "second point set")
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"Point sets live in R^{A.shape[1]} and R^{B.shape[1]}")

    factor = _metric_factor(metric, A.shape[1])
    if factor is not None:
        A, B = A @ factor, B @ factor
    return max(directed_hausdorff(A, B, seed=0)[0], directed_hausdorff(B, A, seed=0)[0])

def resample_polyline(points, factor: int) -> np.ndarray:
    """Inserts `factor - 1` evenly spaced points between consecutive samples."""
    points = _as_points(points, "polyline")
    if factor < 1:
        raise ValueError(f"Resampling factor must be >= 1, got {factor}")
    pieces = [points[:1]]
    fractions = np.arange(1, factor + 1) / factor
    for start, end in zip(points[:-1], points[1:]):
        pieces.append(start + fractions[:, None] * (end - start))
    return np.vstack(pieces)

def sampling_resolution(points, metric: Metric = None) -> float:
    """Half the largest gap between consecutive samples: the Hausdorff error of the sampling."""
    points = _as_points(points, "polyline")
    if points.shape[0] < 2:
        return 0.0
    factor = _metric_factor(metric, points.shape[1])
    steps = np.diff(points, axis=0)
    if factor is not None:
        steps = steps @ factor
    return 0.5 * float(np.max(np.linalg.norm(steps, axis=1)))
