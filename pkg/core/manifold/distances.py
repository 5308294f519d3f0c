import logging
from dataclasses import dataclass
from typing import Optional
import numpy as np
from core.operators.eigen_basis import EigenBasis
from core.operators.transfer_operators import TransferOperators
from .exceptions import GridMismatchError
from .reduced_system import ReducedSystem

C1_STEP = 1e-4
DEFAULT_SAMPLE_NODES = 21

logger = logging.getLogger(__name__)

def graph_distance(phi_eps, phi_0eps, transfer: TransferOperators, norm_basis: Optional[EigenBasis] = None) -> float:
    """
    max over grid nodes p of ||Phi_eps(p) - E Phi_0^eps(p)||_{X^alpha} on the thin channel.

    Graphs over the same basis family (both thin-channel or both limit) are compared without
    lifting. `norm_basis` (complete thin-channel basis for exact norms) defaults to the first
    graph's Galerkin basis.

    Raises:
        GridMismatchError: On different m or grid nodes.
    """
    if phi_eps.m != phi_0eps.m or phi_eps.shape != phi_0eps.shape:
        raise GridMismatchError(f"Graphs have m={phi_eps.m}, {phi_0eps.m} and grids {phi_eps.shape}, {phi_0eps.shape}")

    if not all(np.allclose(a, b, rtol=1e-12, atol=1e-12) for a, b in zip(phi_eps.axes, phi_0eps.axes)):
        raise GridMismatchError()

    m = phi_eps.m
    first = phi_eps.basis.vectors[:, m:m + phi_eps.codimension] @ phi_eps.flat_values.T
    second = phi_0eps.basis.vectors[:, m:m + phi_0eps.codimension] @ phi_0eps.flat_values.T

    if second.shape[0] != first.shape[0]:
        second = transfer.extend(second)

    norm_basis = norm_basis or phi_eps.basis
    coefficients = norm_basis.coefficients(first - second)
    return float(np.max(norm_basis.coefficient_alpha_norm(coefficients)))

@dataclass(frozen=True)
class MapDistance:
    c0: float
    c1: float
    samples: int

def sampling_ball(system: ReducedSystem, radius: float, nodes_per_axis: int) -> np.ndarray:
    extents = radius / system.metric_weights
    axes = [np.linspace(-extent, extent, nodes_per_axis) for extent in extents]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.column_stack([axis.ravel() for axis in mesh])
    return points[np.linalg.norm(points * system.metric_weights, axis=1) <= radius * (1 + 1e-12)]

def reduced_map_distance(
    system_a: ReducedSystem,
    system_b: ReducedSystem,
    radius: Optional[float] = None,
    nodes_per_axis: int = DEFAULT_SAMPLE_NODES
) -> MapDistance:
    """
    C0 and C1 distances of two reduced time-one maps over a grid in the ball of radius
    2R' (metric of the first system). C1 uses central differences with step 1e-4 and the
    weighted operator 2-norm.
    """
    if system_a.m != system_b.m:
        raise GridMismatchError(f"Reduced systems have m={system_a.m} and m={system_b.m}")

    radius = 2.0 * system_a.Rprime if radius is None else radius
    weights = system_a.metric_weights
    points = sampling_ball(system_a, radius, nodes_per_axis)
    c0, c1 = 0.0, 0.0

    for z in points:
        image_a, image_b = system_a.time_one(z), system_b.time_one(z)
        c0 = max(c0, float(np.linalg.norm(weights * (image_a - image_b))))

        difference = system_a.time_one_jacobian(z, C1_STEP) - system_b.time_one_jacobian(z, C1_STEP)
        scaled = weights[:, None] * difference / weights[None, :]
        c1 = max(c1, float(np.linalg.norm(scaled, 2)))

    logger.debug(f"Reduced map distance over {len(points)} samples: C0={c0:.3e}, C1={c1:.3e}")
    return MapDistance(c0, c1, len(points))
