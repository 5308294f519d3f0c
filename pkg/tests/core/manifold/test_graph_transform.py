import dataclasses
import numpy as np
import pytest
from core.manifold.coordinates import build_coordinate_map
from core.manifold.distances import graph_distance
from core.manifold.exceptions import GridMismatchError
from core.manifold.graph_transform import GraphGridSpec, graph_lipschitz, invariance_defect
from core.manifold.reduced_system import reduced_time_one
from experiments.laboratory import ChannelLaboratory

@pytest.fixture
def lab(small_config):
    return ChannelLaboratory(small_config)

class TestCoordinateMap:
    def test_limit_coordinates_are_the_leading_modes(self, lab):
        coordinates = build_coordinate_map(lab.limit.galerkin, 2)
        np.testing.assert_array_equal(coordinates.psi, np.eye(2))
        p = np.array([[0.3, -0.4]])
        np.testing.assert_allclose(coordinates.norm(p), np.linalg.norm(coordinates.weights * p, axis=1))
        np.testing.assert_allclose(coordinates.axis_extents(2.0), 2.0 / coordinates.weights)

class TestGraphSpec:
    def test_radii_and_advance_grid(self):
        spec = GraphGridSpec(1.0, nodes_per_axis=11)
        assert spec.support_radius == pytest.approx(2.2)
        assert spec.advance_nodes == 16

class TestStraightChannelGraph:
    def test_x_constant_subspace_is_the_manifold(self, lab):
        graph = lab.limit_graph
        assert graph.m == 1
        assert graph.iterations <= 2
        assert np.max(np.abs(graph.values)) <= 1e-10
        assert graph.lipschitz_est == pytest.approx(graph_lipschitz(graph))
        assert graph.lipschitz_est < 1e-6
        assert invariance_defect(graph, lab.limit.stepper) <= 1e-10

    def test_reduced_equilibria_are_the_constant_states(self, lab):
        reduced = lab.limit_reduced
        points = reduced.equilibria(lab.reduced_seeds(reduced))
        assert len(points) == 3
        means = sorted(float(np.mean(lab.limit.stepper.field(reduced.graph.state(z)[0]))) for z in points)
        np.testing.assert_allclose(means, [-2.0, 0.0, 2.0], atol=1e-6)
        for z in points:
            np.testing.assert_allclose(reduced_time_one(z, reduced), z, atol=1e-8)

    def test_graph_distance(self, lab):
        graph = lab.limit_graph
        assert graph_distance(graph, graph, lab.transfer) == 0.0
        shifted = dataclasses.replace(graph, axes=(2.0 * graph.axes[0],))
        with pytest.raises(GridMismatchError):
            graph_distance(graph, shifted, lab.transfer)

    def test_reduced_map_needs_the_stepper_time_step(self, lab):
        with pytest.raises(ValueError):
            reduced_time_one(np.zeros(1), lab.limit_reduced, dt=0.01)
