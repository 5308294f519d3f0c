import numpy as np
import pytest
from core.operators.discrete_operator import assemble_A0, assemble_Aeps, solve_resolvent
from core.operators.eigen_basis import align_signs, eigs, norm_eval
from core.operators.energy import energy_functionals, energy_pair
from core.operators.exceptions import InvalidOperatorConfigError, OperatorError, TruncationError
from core.operators.fem_assembly import assemble_1d
from core.operators.measurements import ResolventComparator, normalized_probe, poincare_defect, projection_distance, resolvent_distance
from core.operators.norm_kind import NormKind
from core.operators.operator_config import OperatorConfig
from core.operators.transfer_operators import build_transfer

class TestOperatorConfig:
    def test_limit_and_thin_configs(self, operator_config):
        assert operator_config.is_limit
        thin = operator_config.with_epsilon(0.1)
        assert not thin.is_limit
        assert thin.epsilon == 0.1
        assert thin.mu == operator_config.mu

    @pytest.mark.parametrize("kwargs, field", [
        ({"mu": 0.0}, "mu"),
        ({"alpha": 0.5}, "alpha"),
        ({"epsilon": 1.5}, "epsilon"),
    ])
    def test_invalid_values(self, kwargs, field):
        with pytest.raises(InvalidOperatorConfigError) as excinfo:
            OperatorConfig(**kwargs)
        assert excinfo.value.field == field

class TestAssembly:
    def test_one_dimensional_mass_integrates_the_weight(self):
        nodes = np.linspace(0.0, 1.0, 9)
        mass = assemble_1d(nodes, lambda x: 1.0 + x, "mass")
        assert float(np.ones(9) @ (mass @ np.ones(9))) == pytest.approx(1.5)

    def test_stiffness_annihilates_constants(self):
        nodes = np.linspace(0.0, 1.0, 9)
        stiffness = assemble_1d(nodes, lambda x: 2.0 + np.sin(x), "stiffness")
        np.testing.assert_allclose(stiffness @ np.ones(9), 0.0, atol=1e-14)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="Available kinds"):
            assemble_1d(np.linspace(0.0, 1.0, 5), None, "curl")

    def test_matrices_are_symmetric(self, sine_grid, operator_config):
        op = assemble_Aeps(sine_grid, operator_config.with_epsilon(0.2))
        assert abs(op.stiffness - op.stiffness.T).max() <= 1e-12 * abs(op.stiffness).max()
        assert abs(op.mass - op.mass.T).max() <= 1e-15 * abs(op.mass).max()

    def test_thin_operator_needs_epsilon(self, sine_grid, operator_config):
        with pytest.raises(InvalidOperatorConfigError):
            assemble_Aeps(sine_grid, operator_config)

    def test_limit_operator_needs_enough_nodes(self, sine_profile, operator_config):
        with pytest.raises(InvalidOperatorConfigError):
            assemble_A0(sine_profile, operator_config, 5)

    def test_limit_operator_has_no_transverse_form(self, limit_operator):
        with pytest.raises(OperatorError):
            limit_operator.transverse_energy(np.ones(limit_operator.size))

    def test_resolvent_rejects_wrong_size(self, limit_operator):
        with pytest.raises(ValueError):
            solve_resolvent(limit_operator, np.ones(limit_operator.size + 1))

    def test_constant_forcing_gives_constant_solution(self, limit_operator):
        solution = solve_resolvent(limit_operator, np.full(limit_operator.size, 3.0))
        np.testing.assert_allclose(solution, 3.0 / limit_operator.config.mu, rtol=1e-10)

class TestTransferOperators:
    def test_average_inverts_extension(self, sine_grid, sine_transfer):
        u = np.random.default_rng(1).standard_normal(sine_grid.nx)
        np.testing.assert_allclose(sine_transfer.average(sine_transfer.extend(u)), u, atol=1e-14)

    def test_extension_is_an_isometry(self, sine_profile, sine_grid, sine_transfer, operator_config):
        op_eps = assemble_Aeps(sine_grid, operator_config.with_epsilon(0.3))
        op_0 = assemble_A0(sine_profile, operator_config, sine_grid.nx)
        u = np.random.default_rng(2).standard_normal(sine_grid.nx)
        assert op_eps.l2_norm(sine_transfer.extend(u)) == pytest.approx(op_0.l2_norm(u), rel=1e-12)

    def test_poincare_defect_bound(self, sine_grid, sine_transfer):
        rng = np.random.default_rng(3)
        for _ in range(100):
            defect, bound = poincare_defect(rng.standard_normal(sine_grid.size), sine_transfer, sine_grid)
            assert defect <= bound * (1.0 + 1e-10)

    def test_transverse_constant_fields_have_no_defect(self, sine_grid, sine_transfer):
        lifted = sine_transfer.extend(np.linspace(-1.0, 2.0, sine_grid.nx))
        defect, bound = poincare_defect(lifted, sine_transfer, sine_grid)
        assert defect == pytest.approx(0.0, abs=1e-24)
        assert bound == pytest.approx(0.0, abs=1e-24)

class TestEigenBasis:
    def test_complete_basis_is_mass_orthonormal(self, limit_operator):
        basis = eigs(limit_operator)
        assert basis.complete
        assert basis.count == limit_operator.size
        gram = basis.vectors.T @ (limit_operator.mass @ basis.vectors)
        np.testing.assert_allclose(gram, np.eye(basis.count), atol=1e-10)
        assert np.all(np.diff(basis.values) > 0)

    def test_first_limit_eigenvalue_is_mu(self, limit_operator):
        basis = eigs(limit_operator, 4)
        assert basis.values[0] == pytest.approx(limit_operator.config.mu, rel=1e-10)
        assert not basis.complete

    def test_alpha_norm_of_a_mode(self, limit_operator):
        basis = eigs(limit_operator)
        mode = basis.vectors[:, 2]
        assert basis.alpha_norm(mode) == pytest.approx(basis.values[2] ** 0.25, rel=1e-9)
        assert norm_eval(mode, basis, NormKind.L2) == pytest.approx(1.0, rel=1e-10)
        assert norm_eval(mode, basis, "Heps1") == pytest.approx(np.sqrt(basis.values[2]), rel=1e-9)

    def test_strict_norm_rejects_truncated_tail(self, limit_operator):
        basis = eigs(limit_operator, 3)
        with pytest.raises(TruncationError):
            basis.alpha_norm(np.random.default_rng(4).standard_normal(limit_operator.size))

    def test_too_many_modes(self, limit_operator):
        with pytest.raises(ValueError):
            eigs(limit_operator, limit_operator.size + 1)

    def test_below_cuts_at_the_threshold(self, limit_operator):
        basis = eigs(limit_operator)
        cut = 0.5 * (basis.values[3] + basis.values[4])
        assert basis.below(cut).count == 4

    def test_aligned_signs_have_positive_overlaps(self, sine_profile, sine_grid, sine_transfer, operator_config):
        basis_0 = eigs(assemble_A0(sine_profile, operator_config, sine_grid.nx))
        basis_eps = eigs(assemble_Aeps(sine_grid, operator_config.with_epsilon(0.1)), check_degenerate=False)
        aligned = align_signs(basis_eps, basis_0, sine_transfer, 3)
        lifted = sine_transfer.extend(basis_0.vectors[:, :3])
        overlaps = np.einsum("ij,ij->j", aligned.vectors[:, :3], aligned.operator.mass @ lifted)
        assert np.all(overlaps >= 0)

class TestResolventComparison:
    def test_straight_channel_with_x_only_data(self, straight_profile, straight_grid, operator_config):
        comparator = ResolventComparator.build(straight_profile, operator_config.with_epsilon(0.1), straight_grid)
        transfer = comparator.transfer
        for k in range(4):
            rhs = normalized_probe(comparator.op_eps, transfer.extend(np.cos(k * np.pi * straight_grid.x)))
            assert comparator.distance(rhs) <= 1e-10

    def test_rhs_must_be_normalized(self, sine_profile, sine_grid, operator_config):
        comparator = ResolventComparator.build(sine_profile, operator_config.with_epsilon(0.1), sine_grid)
        with pytest.raises(ValueError, match="normalized"):
            comparator.distance(3.0 * np.ones(sine_grid.size))

    def test_zero_rhs(self, sine_profile, sine_grid, operator_config):
        comparator = ResolventComparator.build(sine_profile, operator_config.with_epsilon(0.1), sine_grid)
        assert comparator.distance(np.zeros(sine_grid.size)) == 0.0

    def test_projection_distance_is_small_on_a_straight_channel(self, straight_profile, straight_grid, operator_config):
        transfer = build_transfer(straight_grid)
        basis_0 = eigs(assemble_A0(straight_profile, operator_config, straight_grid.nx))
        basis_eps = eigs(assemble_Aeps(straight_grid, operator_config.with_epsilon(0.05)), check_degenerate=False)
        probes = [np.cos(k * np.pi * straight_grid.x) for k in range(3)]
        assert projection_distance(basis_eps, basis_0, transfer, 2, probes) <= 1e-8

class TestEnergyPair:
    def test_thin_energy_stays_below_the_limit_energy(self, sine_profile, sine_grid, sine_transfer, operator_config):
        op_eps = assemble_Aeps(sine_grid, operator_config.with_epsilon(0.25))
        op_0 = assemble_A0(sine_profile, operator_config, sine_grid.nx)
        rng = np.random.default_rng(5)
        for _ in range(5):
            pair = energy_pair(op_eps, op_0, sine_transfer, rng.standard_normal(sine_grid.size))
            assert pair.margin >= -1e-12 * abs(pair.lambda_eps)

    def test_equality_for_x_only_data_on_a_straight_channel(self, straight_profile, straight_grid, operator_config):
        transfer = build_transfer(straight_grid)
        op_eps = assemble_Aeps(straight_grid, operator_config.with_epsilon(0.25))
        op_0 = assemble_A0(straight_profile, operator_config, straight_grid.nx)
        pair = energy_pair(op_eps, op_0, transfer, transfer.extend(np.cos(np.pi * straight_grid.x)))
        assert pair.lambda_eps < 0
        assert pair.margin == pytest.approx(0.0, abs=1e-12)

    def test_energy_functionals_assemble_the_same_pair(self, sine_profile, sine_grid, sine_transfer, operator_config):
        config = operator_config.with_epsilon(0.25)
        rhs = np.random.default_rng(6).standard_normal(sine_grid.size)
        pair = energy_functionals(sine_profile, config, rhs, sine_grid)
        reference = energy_pair(assemble_Aeps(sine_grid, config), assemble_A0(sine_profile, operator_config, sine_grid.nx), sine_transfer, rhs)
        assert pair.lambda_eps == pytest.approx(reference.lambda_eps, rel=1e-12)
        assert pair.tau_eps == pytest.approx(reference.tau_eps, rel=1e-12)
        assert pair.margin >= -1e-12 * abs(pair.lambda_eps)

class TestLimitSpectrum:
    NODES = 257

    def test_straight_channel_spectrum(self, straight_profile, operator_config):
        basis = eigs(assemble_A0(straight_profile, operator_config, self.NODES), 3)
        np.testing.assert_allclose(basis.values, [1.0, 1.0 + np.pi ** 2, 1.0 + 4.0 * np.pi ** 2], rtol=1e-3)

    def test_resolvent_of_the_first_cosine(self, straight_profile, operator_config):
        op_0 = assemble_A0(straight_profile, operator_config, self.NODES)
        mode = np.cos(np.pi * op_0.x_nodes)
        np.testing.assert_allclose(solve_resolvent(op_0, mode), mode / (1.0 + np.pi ** 2), atol=1e-4)

    def test_thin_eigenvalues_approach_the_limit_on_a_curved_channel(self, sine_profile, sine_grid, operator_config):
        limit = eigs(assemble_A0(sine_profile, operator_config, sine_grid.nx), 3).values
        gaps = []
        for epsilon in (0.2, 0.1, 0.05):
            thin = eigs(assemble_Aeps(sine_grid, operator_config.with_epsilon(epsilon)), 3, check_degenerate=False).values
            gaps.append(float(np.max(np.abs(thin - limit))))
        assert np.all(np.diff(gaps) < 0)
        assert gaps[-1] <= 0.3 * gaps[0]

class TestResolventDistance:
    def test_straight_channel_vanishes(self, straight_profile, straight_grid, operator_config):
        config = operator_config.with_epsilon(0.1)
        op_eps = assemble_Aeps(straight_grid, config)
        transfer = build_transfer(straight_grid)
        rhs_set = [normalized_probe(op_eps, transfer.extend(np.cos(k * np.pi * straight_grid.x))) for k in range(4)]
        assert resolvent_distance(straight_profile, config, straight_grid, rhs_set) <= 1e-10

    def test_curved_channel_distance_shrinks_with_epsilon(self, sine_profile, sine_grid, sine_transfer, operator_config):
        distances = []
        for epsilon in (0.2, 0.05):
            config = operator_config.with_epsilon(epsilon)
            op_eps = assemble_Aeps(sine_grid, config)
            rhs_set = [normalized_probe(op_eps, sine_transfer.extend(np.cos(k * np.pi * sine_grid.x))) for k in range(1, 3)]
            distances.append(resolvent_distance(sine_profile, config, sine_grid, rhs_set))
        assert 0.0 < distances[1] < distances[0]

    def test_empty_rhs_set(self, sine_profile, sine_grid, operator_config):
        assert resolvent_distance(sine_profile, operator_config.with_epsilon(0.1), sine_grid, []) == 0.0
