import numpy as np
import pytest
from scipy.integrate import simpson
from core.expansion.cell_problem import closed_form_V2, compatibility_check, expansion_terms, grad_y_V2_norm, solve_cell_V2
from core.expansion.closed_form_field import cosine_forcing, cosine_mode, solve_limit_field
from core.expansion.exceptions import CompatibilityError, EpsilonOrderError
from core.expansion.optimality import check_eps_order, odd_term_ratio, optimality_ratio, odd_terms_vanish
from core.geometry.channel_profile import build_profile
from core.geometry.profile_kind import ProfileKind
from core.operators.discrete_operator import assemble_A0

@pytest.fixture
def sine_field(sine_profile, operator_config):
    op_0 = assemble_A0(sine_profile, operator_config, 65)
    return op_0, solve_limit_field(op_0, cosine_forcing(1))

class TestClosedForm:
    def test_V2_has_zero_mean(self, sine_profile):
        r = float(sine_profile.r(0.3))
        y = np.linspace(-r, r, 101)
        values = closed_form_V2(sine_profile, 1.7, 0.3, y)
        assert simpson(values, x=y) == pytest.approx(0.0, abs=1e-12)

    def test_cosine_mode_solves_the_straight_limit_equation(self, straight_profile):
        assert compatibility_check(straight_profile, cosine_mode(1), cosine_forcing(1)) <= 1e-12

    def test_straight_channel_has_no_corrector(self, straight_profile):
        assert grad_y_V2_norm(straight_profile, cosine_mode(2), cosine_forcing(2)) == pytest.approx(0.0, abs=1e-12)

class TestCellProblem:
    def test_neumann_solve_matches_the_closed_form(self, sine_profile, sine_field):
        op_0, field = sine_field
        x = op_0.x_nodes[16]
        cell = solve_cell_V2(sine_profile, field, cosine_forcing(1), x)
        assert x == pytest.approx(0.25)
        assert cell.deviation <= 1e-9
        assert cell.flux == pytest.approx(cell.c * float(sine_profile.r(x)), rel=1e-6)

    @pytest.mark.parametrize("d", [3, 4])
    def test_radial_solve_matches_the_closed_form(self, d, operator_config):
        profile = build_profile(ProfileKind.SINE, (0.3,), d)
        op_0 = assemble_A0(profile, operator_config, 65)
        field = solve_limit_field(op_0, cosine_forcing(1))
        cell = solve_cell_V2(profile, field, cosine_forcing(1), op_0.x_nodes[16])
        assert cell.y[0] == 0.0
        assert cell.flux == pytest.approx(cell.c * float(profile.r(cell.x)) / (d - 1), rel=1e-6)
        assert cell.deviation <= 1e-8 * max(1.0, float(np.max(np.abs(cell.closed_form))))

    def test_incompatible_data_is_rejected(self, sine_profile):
        with pytest.raises(CompatibilityError):
            solve_cell_V2(sine_profile, cosine_mode(1), cosine_forcing(1), 0.25)

    def test_corrector_norm_is_positive_on_a_sine_channel(self, sine_profile, sine_field):
        _, field = sine_field
        assert grad_y_V2_norm(sine_profile, field, cosine_forcing(1)) > 0

class TestExpansionTerms:
    def test_corrector_matches_the_cell_solution(self, sine_profile, sine_field):
        op_0, field = sine_field
        terms = expansion_terms(sine_profile, field, cosine_forcing(1))
        x = op_0.x_nodes[40]
        cell = solve_cell_V2(sine_profile, field, cosine_forcing(1), x)
        np.testing.assert_allclose(terms.V2(x, cell.y), cell.values, atol=1e-9)
        assert terms.grad_y_V2_norm == pytest.approx(grad_y_V2_norm(sine_profile, field, cosine_forcing(1)))
        assert terms.odd_terms_zero

    def test_straight_channel_corrector_vanishes(self, straight_profile):
        terms = expansion_terms(straight_profile, cosine_mode(1), cosine_forcing(1))
        assert terms.grad_y_V2_norm == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(terms.V2(0.3, np.linspace(-1.0, 1.0, 5)), 0.0, atol=1e-12)

class TestOptimality:
    def test_epsilon_order(self):
        check_eps_order([0.5, 0.25, 0.125])
        for bad in ([0.25, 0.5], [1.5, 0.5], [], [0.5, 0.5]):
            with pytest.raises(EpsilonOrderError):
                check_eps_order(bad)

    def test_even_expansion_has_no_odd_part(self):
        eps = [0.2, 0.1, 0.05]
        ratios = [1.3 + 0.7 * e ** 2 for e in eps]
        assert odd_term_ratio(eps, ratios) == pytest.approx(0.0, abs=1e-9)

    def test_odd_part_is_detected(self):
        eps = [0.2, 0.1, 0.05]
        ratios = [1.0 + 4.0 * e for e in eps]
        assert odd_term_ratio(eps, ratios) == pytest.approx(0.2, rel=1e-9)

    def test_richardson_split_needs_three_points(self):
        with pytest.raises(ValueError):
            odd_term_ratio([0.2, 0.1], [1.0, 1.0])

    def test_straight_channel_sits_at_the_floor(self, straight_profile, operator_config):
        table = optimality_ratio(straight_profile, operator_config, cosine_forcing(1), [0.5, 0.25, 0.125], 17, 5, 64)
        assert all(row.at_floor for row in table.rows)
        assert table.target == pytest.approx(0.0, abs=1e-12)
        assert odd_terms_vanish(table)
