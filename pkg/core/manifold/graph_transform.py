import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple
import numpy as np
from scipy.interpolate import LinearNDInterpolator
from core.semiflow.stepper import Stepper
from .coordinates import CoordinateMap
from .exceptions import GapConditionError, GraphLipschitzError, GraphNotConvergedError, GridCoverageError
from .gap_report import GapReport
from .graph_fn import GraphFn

SUPPORT_FACTOR = 1.1
TARGET_FACTOR = 2.0
ADVANCE_FACTOR = 3.0
COVERAGE_MARGIN = 1.05
CONVERGENCE_TOLERANCE = 1e-8
MAX_ITERATIONS = 200

@dataclass(frozen=True)
class GraphGridSpec:
    """
    Support radius R' = 1.1 * 2R; Phi lives on a grid of radius 2R' and each transform
    advances a grid of radius 3R'.
    """
    cutoff_radius: float
    nodes_per_axis: int = 41
    tolerance: float = CONVERGENCE_TOLERANCE
    max_iterations: int = MAX_ITERATIONS

    @property
    def support_radius(self) -> float:
        return SUPPORT_FACTOR * 2.0 * self.cutoff_radius

    @property
    def advance_nodes(self) -> int:
        return int(math.ceil(ADVANCE_FACTOR / TARGET_FACTOR * (self.nodes_per_axis - 1))) + 1

def _tensor_nodes(extents: np.ndarray, count: int) -> Tuple[Tuple[np.ndarray, ...], np.ndarray]:
    axes = tuple(np.linspace(-extent, extent, count) for extent in extents)
    mesh = np.meshgrid(*axes, indexing="ij")
    return axes, np.column_stack([axis.ravel() for axis in mesh])

def transform_time(stepper: Stepper, m: int) -> float:
    """
    Flow time of one transform: 1, shortened for fast leading modes so that the advanced
    grid still covers the support ball. A multiple of dt.
    """
    fastest = float(np.max(stepper.basis.values[:m]))
    time = min(1.0, math.log(ADVANCE_FACTOR / COVERAGE_MARGIN) / fastest)
    return max(1, int(time / stepper.dt)) * stepper.dt

def _advance(stepper: Stepper, states: np.ndarray, time: float) -> np.ndarray:
    return np.array([stepper.flow(c, time) for c in states])

def _regrid(coordinates: CoordinateMap, images_p: np.ndarray, images_q: np.ndarray, targets: np.ndarray) -> np.ndarray:
    if targets.shape[0] == 0:
        return np.zeros((0, images_q.shape[1]))

    if coordinates.m == 1:
        order = np.argsort(images_p[:, 0])
        sorted_p = images_p[order, 0]
        lowest, highest = targets[:, 0].min(), targets[:, 0].max()
        if sorted_p[0] > lowest or sorted_p[-1] < highest:
            covered = float(min(coordinates.norm(sorted_p[[0]][:, None])[0], coordinates.norm(sorted_p[[-1]][:, None])[0]))
            required = float(np.max(coordinates.norm(targets)))
            raise GridCoverageError(covered, required)
        return np.column_stack([np.interp(targets[:, 0], sorted_p, images_q[order, k]) for k in range(images_q.shape[1])])

    values = LinearNDInterpolator(images_p, images_q, fill_value=np.nan)(targets)
    missing = np.isnan(values).any(axis=1)
    if missing.any():
        raise GridCoverageError(float(np.min(coordinates.norm(targets[missing]))), float(np.max(coordinates.norm(targets))))
    return values

def graph_lipschitz(graph: GraphFn) -> float:
    """Largest difference quotient of Phi between neighbouring grid nodes."""
    worst = 0.0
    for axis in range(graph.m):
        step_q = np.diff(graph.values, axis=axis).reshape(-1, graph.codimension)
        spacing = np.zeros(graph.m)
        spacing[axis] = graph.axes[axis][1] - graph.axes[axis][0]
        distance = float(graph.coordinates.norm(spacing[None, :])[0])
        worst = max(worst, float(np.max(graph.q_norm(step_q))) / distance)
    return worst

def compute_graph(
    stepper: Stepper,
    coordinates: CoordinateMap,
    grid: GraphGridSpec,
    gap_report: Optional[GapReport] = None,
    enforce_gap: bool = False,
    attractor_radius: Optional[float] = None,
    grid_coordinates: Optional[CoordinateMap] = None
) -> GraphFn:
    """
    图变换迭代 (graph transform)。

    Starts from Phi = 0, advances every node of the large grid along the flow, re-fits the
    complement coefficients over the image coordinates and repeats until successive graphs
    differ by at most `grid.tolerance` in sup X^alpha norm. `grid_coordinates` fixes the
    coordinate box (e.g. the limit system's) so that graphs of several systems share nodes.

    Raises:
        GapConditionError: If `enforce_gap` is set and the gap report is unsatisfied.
        GridCoverageError: If the grid ball misses the attractor or the images miss the support ball.
        GraphNotConvergedError: If the iteration budget is exhausted.
        GraphLipschitzError: If the converged graph has Lipschitz constant >= 1.
    """
    logger = logging.getLogger(__name__)
    m = coordinates.m
    support = grid.support_radius

    if gap_report is not None and not gap_report.satisfied:
        if enforce_gap:
            raise GapConditionError(gap_report.m, gap_report.gap, gap_report.gap_threshold)
        logger.warning(f"Gap condition unsatisfied for m={gap_report.m}; relying on the measured graph Lipschitz constant")

    if attractor_radius is not None and TARGET_FACTOR * support < attractor_radius:
        raise GridCoverageError(TARGET_FACTOR * support, attractor_radius)

    box = grid_coordinates or coordinates
    axes, targets = _tensor_nodes(box.axis_extents(TARGET_FACTOR * support), grid.nodes_per_axis)
    _, advance = _tensor_nodes(box.axis_extents(ADVANCE_FACTOR * support), grid.advance_nodes)
    inside = coordinates.norm(targets) < support
    codimension = stepper.dimension - m
    time = transform_time(stepper, m)

    graph = GraphFn(m, axes, np.zeros(tuple(len(axis) for axis in axes) + (codimension,)), stepper.basis, coordinates, support)
    previous_change, contraction = np.inf, np.nan

    for iteration in range(1, grid.max_iterations + 1):
        images = _advance(stepper, graph.state(advance), time)
        values = np.zeros((targets.shape[0], codimension))
        values[inside] = _regrid(coordinates, coordinates.from_modes(images[:, :m]), images[:, m:], targets[inside])

        change = float(np.max(graph.q_norm(values - graph.flat_values))) if values.size else 0.0
        contraction = change / previous_change if np.isfinite(previous_change) and previous_change > 0 else np.nan
        graph = graph.with_values(values.reshape(graph.values.shape), iterations=iteration)
        logger.debug(f"Graph transform iteration {iteration}: change {change:.3e}, contraction {contraction:.3g}")

        if change <= grid.tolerance:
            break
        previous_change = change
    else:
        raise GraphNotConvergedError(grid.max_iterations, contraction, change)

    lipschitz = graph_lipschitz(graph)
    graph = graph.with_values(graph.values, lipschitz_est=lipschitz)
    logger.info(f"Graph over m={m} modes converged in {graph.iterations} iterations, Lipschitz constant {lipschitz:.4g}")

    if lipschitz >= 1.0:
        raise GraphLipschitzError(lipschitz)

    return graph

def invariance_defect(graph: GraphFn, stepper: Stepper) -> float:
    """
    Advances the graph points inside the support ball by one transform time and measures the
    mismatch of the image complement coefficients against the graph at the image coordinates.
    """
    time = transform_time(stepper, graph.m)
    nodes = graph.nodes[graph.coordinates.norm(graph.nodes) < graph.support_radius]
    if nodes.shape[0] == 0:
        return 0.0
    images = _advance(stepper, graph.state(nodes), time)
    image_p = graph.coordinates.from_modes(images[:, :graph.m])
    return float(np.max(graph.q_norm(images[:, graph.m:] - graph(image_p))))
