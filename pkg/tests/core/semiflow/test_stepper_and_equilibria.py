import numpy as np
import pytest
from core.semiflow.equilibria import find_equilibria
from core.semiflow.attractor import approximate_attractor
from core.semiflow.exceptions import EmptySeedError, SupNormViolationError
from core.semiflow.metrics import dissipativity_check, energy_trace, linear_smoothing_bound
from core.semiflow.scheme_type import SchemeType
from core.semiflow.stepper import Stepper, galerkin_cut, time_one_map
from experiments.laboratory import ChannelLaboratory

@pytest.fixture
def lab(small_config):
    return ChannelLaboratory(small_config)

@pytest.fixture
def stepper(lab):
    return lab.limit.stepper

class TestStepper:
    def test_galerkin_cut_sits_between_eigenvalues(self, lab):
        basis = lab.limit.basis
        cut = galerkin_cut(basis, 4)
        assert basis.values[3] < cut < basis.values[4]
        assert basis.below(cut).count == 4

    def test_galerkin_cut_needs_one_more_eigenvalue(self, lab):
        with pytest.raises(ValueError):
            galerkin_cut(lab.limit.basis, lab.limit.basis.count)

    def test_time_step_must_be_positive(self, stepper):
        with pytest.raises(ValueError):
            Stepper(stepper.basis, stepper.nonlinear_op, 0.0)

    def test_scheme_from_string(self, stepper):
        assert Stepper(stepper.basis, stepper.nonlinear_op, stepper.dt, "etdrk2").scheme == SchemeType.ETDRK2
        with pytest.raises(ValueError, match="Available scheme types"):
            SchemeType.from_string("rk4")

    def test_field_and_coefficients_are_inverse(self, stepper):
        c = np.array([0.3, -0.2, 0.1, 0.05])
        np.testing.assert_allclose(stepper.coefficients(stepper.field(c)), c, atol=1e-12)

    def test_linear_smoothing_bound(self):
        assert linear_smoothing_bound(np.array([1.0, 4.0])) == pytest.approx(np.exp(-1.0))

class TestEquilibria:
    def test_three_constant_equilibria(self, lab, stepper):
        equilibria = find_equilibria(lab.seeds(stepper.basis.operator.size), stepper)
        assert equilibria.count == 3
        assert equilibria.failed_seeds == []

        means = [float(np.mean(point)) for point in equilibria.points]
        order = np.argsort(means)
        np.testing.assert_allclose(np.array(means)[order], [-2.0, 0.0, 2.0], atol=1e-6)
        assert [equilibria.unstable_dims[i] for i in order] == [0, 1, 0]
        assert all(equilibria.hyperbolic)

    def test_equilibria_are_fixed_points_of_the_time_one_map(self, lab, stepper):
        equilibria = find_equilibria(lab.seeds(stepper.basis.operator.size), stepper)
        for point in equilibria.points:
            assert np.max(np.abs(time_one_map(point, stepper) - point)) <= 1e-6

        u = np.full(stepper.basis.operator.size, 0.5)
        assert np.max(np.abs(time_one_map(u, stepper) - u)) > 1e-3

    def test_iterated_time_one_map_settles_on_a_newton_equilibrium(self, stepper):
        u = np.full(stepper.basis.operator.size, 1.5)
        for _ in range(30):
            u = time_one_map(u, stepper)
        assert np.max(np.abs(time_one_map(u, stepper) - u)) <= 1e-6

        equilibria = find_equilibria([u], stepper)
        assert equilibria.count == 1
        np.testing.assert_allclose(equilibria.points[0], u, atol=1e-6)

    def test_time_one_map_with_another_nonlinearity(self, lab, stepper):
        u = np.full(stepper.basis.operator.size, 0.5)
        np.testing.assert_allclose(time_one_map(u, stepper, stepper.nonlinear_op), time_one_map(u, stepper), atol=1e-14)

    def test_empty_seed_list(self, stepper):
        with pytest.raises(EmptySeedError):
            find_equilibria([], stepper)

class TestDissipation:
    def test_energy_decreases_along_a_trajectory(self, stepper):
        c = stepper.coefficients(np.full(stepper.basis.operator.size, 0.5))
        trace = energy_trace(stepper, c, 2.0, sample_every=16)
        assert np.all(np.diff(trace) <= 1e-12 * abs(trace[0]))

    def test_random_data_enters_the_absorbing_ball(self, stepper):
        absorbed, worst = dissipativity_check(stepper, count=3)
        assert absorbed
        assert worst <= stepper.nonlinear_op.reaction.M + 0.05

class TestAttractor:
    def test_connections_stay_inside_the_sup_norm_bound(self, lab, stepper):
        attractor = approximate_attractor(find_equilibria(lab.seeds(stepper.basis.operator.size), stepper))
        assert len(attractor.connections) == 2
        assert attractor.max_sup_norm <= stepper.nonlinear_op.reaction.M + 0.05

    def test_sup_norm_violation_raises(self, lab, stepper, monkeypatch):
        monkeypatch.setattr("core.semiflow.attractor.SUP_NORM_SLACK", -1.0)
        equilibria = find_equilibria(lab.seeds(stepper.basis.operator.size), stepper)
        with pytest.raises(SupNormViolationError) as excinfo:
            approximate_attractor(equilibria)
        assert excinfo.value.bound == pytest.approx(stepper.nonlinear_op.reaction.M - 1.0)
        assert excinfo.value.sup_norm > excinfo.value.bound
