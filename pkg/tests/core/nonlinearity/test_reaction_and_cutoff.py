import numpy as np
import pytest
from core.nonlinearity.cutoff import Cutoff
from core.nonlinearity.estimators import analytic_lipschitz_bound, holder_exponent_target, lipschitz_estimator, rho_beta_metrics
from core.nonlinearity.exceptions import EmptySampleError, InvalidReactionError, NonlinearityError
from core.nonlinearity.nonlinear_operator import GateSpace, NonlinearOperator, apply_cutoff_F, commutation_check, gate_region_report, rescale_to_gate
from core.nonlinearity.reaction_kind import ReactionKind
from core.nonlinearity.reaction_term import build_reaction
from core.nonlinearity.smoothstep import smoothstep, smoothstep_prime
from core.operators.discrete_operator import assemble_A0, assemble_Aeps
from core.operators.eigen_basis import eigs
from core.operators.transfer_operators import build_transfer

@pytest.fixture
def cubic():
    return build_reaction(ReactionKind.CUBIC)

def smooth_fields(x, count, seed):
    rng = np.random.default_rng(seed)
    k = np.arange(6)
    return list((rng.standard_normal((count, 6)) / (1.0 + k) ** 2) @ np.cos(np.pi * np.outer(k, x)))

@pytest.fixture
def limit_nonlinearity(limit_operator, cubic):
    basis = eigs(limit_operator)
    radius = 1.5 * cubic.M * basis.alpha_norm(np.ones(limit_operator.size))
    return NonlinearOperator(cubic, Cutoff(radius), basis, limit_operator.x_nodes)

class TestSmoothstep:
    def test_end_points_and_midpoint(self):
        np.testing.assert_allclose(smoothstep(np.array([-1.0, 0.0, 0.5, 1.0, 2.0])), [0.0, 0.0, 0.5, 1.0, 1.0])

    def test_derivative_vanishes_outside(self):
        np.testing.assert_array_equal(smoothstep_prime(np.array([-0.5, 0.0, 1.0, 1.5])), 0.0)
        assert float(smoothstep_prime(np.array(0.5))) == pytest.approx(1.875)

class TestReactionTerm:
    def test_default_threshold_for_cubic(self, cubic):
        assert cubic.M == pytest.approx(np.sqrt(5.0))

    def test_taper_keeps_the_inner_form(self, cubic):
        s = np.linspace(-cubic.M, cubic.M, 41)
        np.testing.assert_allclose(cubic.f(s), 5.0 * s - s ** 3, atol=1e-14)

    def test_taper_switches_off_beyond_twice_the_threshold(self, cubic):
        s = np.array([-3.0, 2.0, 4.0]) * cubic.M
        np.testing.assert_array_equal(cubic.f(s[[0, 2]]), 0.0)
        np.testing.assert_array_equal(cubic.f_prime(s[[0, 2]]), 0.0)

    def test_derivatives_match_finite_differences(self, cubic):
        s = np.linspace(-3.0 * cubic.M, 3.0 * cubic.M, 37) + 0.013
        h = 1e-6
        np.testing.assert_allclose(cubic.f_prime(s), (cubic.f(s + h) - cubic.f(s - h)) / (2 * h), atol=1e-6)
        np.testing.assert_allclose(cubic.f_second(s), (cubic.f_prime(s + h) - cubic.f_prime(s - h)) / (2 * h), atol=1e-5)

    def test_primitive(self, cubic):
        assert float(cubic.primitive(np.array(1.0))) == pytest.approx(2.25, rel=1e-12)
        linear = build_reaction(ReactionKind.LINEAR, a=5.0)
        assert float(linear.primitive(np.array(2.0))) == pytest.approx(10.0, rel=1e-12)

    def test_dissipative_beyond_threshold(self, cubic):
        assert cubic.dissipativity_defect() <= 1e-12

    def test_bounds_are_finite(self, cubic):
        assert 0 < cubic.sup_f_prime <= cubic.Lf < np.inf
        assert cubic.sup_f > 0

    def test_tilted_reaction_needs_coordinates(self):
        tilted = build_reaction(ReactionKind.CUBIC, tilt=0.5, M=2.5)
        with pytest.raises(InvalidReactionError):
            tilted.f(np.array([0.1]))
        assert float(tilted.f(np.array([0.0]), np.array([0.0]))) == pytest.approx(0.5)

    def test_small_threshold_is_rejected(self):
        with pytest.raises(InvalidReactionError):
            build_reaction(ReactionKind.CUBIC, M=1.0)

    def test_tilt_needs_a_larger_threshold(self):
        with pytest.raises(InvalidReactionError):
            build_reaction(ReactionKind.CUBIC, tilt=0.5)

    def test_tilt_needs_cubic_kind(self):
        with pytest.raises(InvalidReactionError):
            build_reaction(ReactionKind.LINEAR, tilt=0.1)

    def test_zero_reaction(self):
        zero = build_reaction("zero")
        np.testing.assert_array_equal(zero.f(np.linspace(-3, 3, 7)), 0.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="Available reaction kinds"):
            ReactionKind.from_string("quartic")

class TestCutoff:
    def test_profile(self):
        cutoff = Cutoff(2.0)
        assert cutoff.theta(1.0) == 1.0
        assert cutoff.theta(2.0) == 1.0
        assert cutoff.theta(4.0) == 0.0
        assert float(cutoff.theta_hat(2.5 * 4.0)) == pytest.approx(0.5)
        assert cutoff.support == 4.0

    def test_lipschitz_constant_bounds_the_slope(self):
        cutoff = Cutoff(1.5)
        r = np.linspace(0.0, 3.5, 2001)
        slopes = np.abs(np.diff(cutoff.theta_hat(r ** 2))) / np.diff(r)
        assert np.max(slopes) <= cutoff.L_theta

    def test_radius_must_be_positive(self):
        with pytest.raises(NonlinearityError):
            Cutoff(0.0)

class TestNonlinearOperator:
    def test_inside_the_cutoff_it_is_the_reaction(self, limit_nonlinearity, limit_operator):
        u = 0.5 * np.cos(np.pi * limit_operator.x_nodes)
        np.testing.assert_allclose(limit_nonlinearity.apply(u), 5.0 * u - u ** 3, atol=1e-14)

    def test_outside_the_cutoff_it_vanishes(self, limit_nonlinearity, limit_operator):
        radius = limit_nonlinearity.cutoff.R
        u = np.ones(limit_operator.size)
        u *= 2.1 * radius / limit_nonlinearity.gate_norm(u)
        np.testing.assert_array_equal(limit_nonlinearity.apply(u), 0.0)

    def test_derivative_in_the_transition_region(self, limit_operator, cubic):
        basis = eigs(limit_operator)
        u = 0.8 + 0.3 * np.cos(np.pi * limit_operator.x_nodes)
        op = NonlinearOperator(cubic, Cutoff(basis.alpha_norm(u) / 1.5), basis, limit_operator.x_nodes)
        v = np.sin(2.0 * np.pi * limit_operator.x_nodes)
        h = 1e-6
        numeric = (op.apply(u + h * v) - op.apply(u - h * v)) / (2 * h)
        np.testing.assert_allclose(op.derivative(u, v), numeric, atol=1e-6)

    def test_lifted_gate_needs_transfer(self, limit_operator, cubic):
        basis = eigs(limit_operator)
        with pytest.raises(NonlinearityError):
            NonlinearOperator(cubic, Cutoff(1.0), basis, limit_operator.x_nodes, GateSpace.LIFTED)

    def test_empirical_lipschitz_constant_stays_below_the_bound(self, limit_nonlinearity, limit_operator):
        rng = np.random.default_rng(7)
        x = limit_operator.x_nodes
        pairs = [(rng.uniform(-1, 1) * np.cos(np.pi * x), rng.uniform(-1, 1) * np.cos(2 * np.pi * x)) for _ in range(12)]
        record = lipschitz_estimator(limit_nonlinearity, pairs)
        assert record.pairs_used == 12
        assert record.analytic_bound == pytest.approx(analytic_lipschitz_bound(limit_nonlinearity))
        assert record.within_bound
        assert limit_nonlinearity.measured["L_F"] == record.L_F

    def test_empty_pair_list(self, limit_nonlinearity):
        with pytest.raises(EmptySampleError):
            lipschitz_estimator(limit_nonlinearity, [])

class TestLiftedNonlinearity:
    def test_straight_channel_commutes_with_extension(self, straight_profile, straight_grid, operator_config, cubic):
        transfer = build_transfer(straight_grid)
        op_eps = assemble_Aeps(straight_grid, operator_config.with_epsilon(0.2))
        op_0 = assemble_A0(straight_profile, operator_config, straight_grid.nx)
        basis_eps = eigs(op_eps, check_degenerate=False)
        radius = 1.5 * cubic.M * basis_eps.alpha_norm(np.ones(op_eps.size))
        thin = NonlinearOperator(cubic, Cutoff(radius), basis_eps, straight_grid.nodes[:, 0])
        lifted = NonlinearOperator(cubic, Cutoff(radius), basis_eps, op_0.x_nodes, GateSpace.LIFTED, transfer)

        u0 = 0.7 * np.cos(np.pi * straight_grid.x)
        assert commutation_check(u0, transfer, thin, lifted) <= 1e-12
        rho, beta = rho_beta_metrics([u0], transfer, (thin, lifted), [np.cos(2 * np.pi * straight_grid.x)])
        assert rho <= 1e-12
        assert beta <= 1e-6

    def test_commutation_on_random_fields_of_a_curved_channel(self, sine_grid, sine_transfer, sine_profile, operator_config, cubic):
        op_eps = assemble_Aeps(sine_grid, operator_config.with_epsilon(0.25))
        basis_eps = eigs(op_eps, check_degenerate=False)
        cutoff = Cutoff(1.5 * cubic.M * basis_eps.alpha_norm(np.ones(op_eps.size)))
        thin = NonlinearOperator(cubic, cutoff, basis_eps, sine_grid.nodes[:, 0])
        lifted = NonlinearOperator(cubic, cutoff, basis_eps, sine_grid.x, GateSpace.LIFTED, sine_transfer)

        rng = np.random.default_rng(11)
        fields = [rescale_to_gate(u, lifted, rng.uniform(0.0, 2.5) * cutoff.R) for u in smooth_fields(sine_grid.x, 50, seed=4)]
        defects = [commutation_check(u, sine_transfer, thin, lifted) for u in fields]
        assert max(defects) <= 1e-12

class TestGateRegions:
    def test_regions_are_exact_through_the_wrapper(self, limit_nonlinearity, limit_operator):
        report = gate_region_report(smooth_fields(limit_operator.x_nodes, 6, seed=1), limit_nonlinearity)
        assert report.agreement_defect == 0.0
        assert report.support_max == 0.0
        assert 0.0 < report.transition_min <= report.transition_max < 1.0
        assert report.exact

    def test_inner_ball_reproduces_the_reaction(self, limit_nonlinearity, limit_operator):
        for u in smooth_fields(limit_operator.x_nodes, 5, seed=2):
            inside = rescale_to_gate(u, limit_nonlinearity, 0.8 * limit_nonlinearity.cutoff.R)
            np.testing.assert_array_equal(apply_cutoff_F(inside, limit_nonlinearity), limit_nonlinearity.nemytskii(inside))
            outside = rescale_to_gate(u, limit_nonlinearity, 2.2 * limit_nonlinearity.cutoff.R)
            np.testing.assert_array_equal(apply_cutoff_F(outside, limit_nonlinearity), 0.0)

    def test_zero_field_cannot_be_rescaled(self, limit_nonlinearity, limit_operator):
        with pytest.raises(NonlinearityError):
            rescale_to_gate(np.zeros(limit_operator.size), limit_nonlinearity, 1.0)

    def test_empty_field_list(self, limit_nonlinearity):
        with pytest.raises(EmptySampleError):
            gate_region_report([], limit_nonlinearity)

class TestHolderExponent:
    @pytest.mark.parametrize("alpha, d, expected", [
        (0.25, 2, 1.0),
        (0.25, 3, 0.5),
        (0.1, 3, 0.4 / 2.6),
        (0.75, 3, 1.0),
    ])
    def test_target(self, alpha, d, expected):
        assert holder_exponent_target(alpha, d) == pytest.approx(expected)

    def test_fitted_exponent_reaches_the_target(self, limit_nonlinearity, limit_operator):
        rng = np.random.default_rng(9)
        R = limit_nonlinearity.cutoff.R
        fields = smooth_fields(limit_operator.x_nodes, 200, seed=3)
        pairs = []
        for index in range(100):
            upper = 1.8 if index < 8 else 2.5
            lower = 0.2 if index < 8 else 0.0
            u, w = fields[2 * index], fields[2 * index + 1]
            pairs.append((rescale_to_gate(u, limit_nonlinearity, rng.uniform(lower, upper) * R), rescale_to_gate(w, limit_nonlinearity, rng.uniform(lower, upper) * R)))

        record = lipschitz_estimator(limit_nonlinearity, pairs)
        assert record.pairs_used == 100
        assert record.within_bound
        assert record.theta_F >= holder_exponent_target(0.25, 2) - 0.1
