import numpy as np
import pandas as pd
import pytest
from experiments.claim_check import at_most, claims_table, in_range, loglog_slope, monotone_decreasing
from experiments.exceptions import RateFitError
from experiments.rate_checks import rate_claims, rows_succeeded
from experiments.rate_fit import fit_rate
from experiments.rate_model import RateModel

EPS = [0.2, 0.1, 0.05, 0.025, 0.0125]

class TestFitRate:
    def test_exact_power_law(self):
        fit = fit_rate([(eps, 3.0 * eps) for eps in EPS])
        assert fit.preferred == RateModel.POWER
        assert fit.p == pytest.approx(1.0, abs=1e-10)
        assert fit.C == pytest.approx(3.0, rel=1e-10)
        assert fit.best.spread == pytest.approx(0.0, abs=1e-10)

    def test_log_corrected_law(self):
        fit = fit_rate([(eps, 0.5 * eps * abs(np.log(eps))) for eps in EPS])
        assert fit.preferred == RateModel.LOG_CORRECTED
        assert fit.p == pytest.approx(1.0, abs=1e-10)
        assert fit.fits[RateModel.POWER].residual > fit.residual

    def test_square_root_rate(self):
        fit = fit_rate([(eps, 2.0 * np.sqrt(eps)) for eps in EPS])
        assert fit.p == pytest.approx(0.5, abs=1e-10)
        curve = fit.curve()
        assert len(curve) == len(EPS)
        assert all(value == pytest.approx(fitted) for _, value, fitted in curve)

    def test_needs_four_pairs(self):
        with pytest.raises(RateFitError):
            fit_rate([(eps, eps) for eps in EPS[:3]])

    @pytest.mark.parametrize("pairs", [
        [(0.2, 1.0), (0.1, 0.0), (0.05, 0.5), (0.025, 0.2)],
        [(0.2, 1.0), (0.1, np.nan), (0.05, 0.5), (0.025, 0.2)],
        [(1.0, 1.0), (0.1, 0.5), (0.05, 0.4), (0.025, 0.2)],
    ])
    def test_rejects_invalid_pairs(self, pairs):
        with pytest.raises(RateFitError):
            fit_rate(pairs)

    def test_unknown_model(self):
        with pytest.raises(ValueError, match="Available models"):
            RateModel.from_string("exponential")

class TestClaimChecks:
    def test_bounds(self):
        assert in_range("p", 1.0, 0.85, 1.15).passed
        assert not in_range("p", float("nan"), 0.0, 2.0).passed
        assert at_most("defect", 1e-13, 1e-12).passed
        assert not at_most("defect", 1e-11, 1e-12).passed

    def test_monotone(self):
        assert monotone_decreasing("gaps", [3.0, 2.0, 2.0, 1.0]).passed
        assert not monotone_decreasing("gaps", [3.0, 2.0, 2.5]).passed
        assert monotone_decreasing("gaps", [3.0, 2.0, 2.05], slack=0.1).passed

    def test_loglog_slope(self):
        assert loglog_slope(EPS, [eps ** 2 for eps in EPS]) == pytest.approx(2.0)
        assert np.isnan(loglog_slope(EPS, [1.0, 0.0, 1.0, 1.0, 1.0]))

    def test_table_marks_failures(self):
        table = claims_table([at_most("a", 0.5, 1.0), at_most("b", 2.0, 1.0)])
        assert "PASS" in table and "FAIL" in table

class TestRateClaims:
    def _table(self, values, status=None):
        return pd.DataFrame({
            "epsilon": EPS,
            "status": status or ["ok"] * len(EPS),
            "reason": [""] * len(EPS),
            "tau": values,
        })

    def test_linear_rate_passes(self):
        fit, claims = rate_claims(self._table([0.7 * eps for eps in EPS]), "tau", 0.85, 1.15)
        assert fit.p == pytest.approx(1.0)
        assert all(claim.passed for claim in claims)

    def test_wrong_rate_fails(self):
        _, claims = rate_claims(self._table([eps ** 2 for eps in EPS]), "tau", 0.85, 1.15)
        assert not claims[0].passed

    def test_log_requirement(self):
        _, claims = rate_claims(self._table([eps for eps in EPS]), "tau", 0.85, 1.15, require_log=True)
        assert claims[0].passed
        assert not claims[1].passed

    def test_floor_column_passes_as_structural_zero(self):
        fit, claims = rate_claims(self._table([1e-14] * len(EPS)), "tau", 0.85, 1.15)
        assert fit is None
        assert len(claims) == 1 and claims[0].passed

    def test_failed_rows_are_skipped(self):
        table = self._table([0.7 * eps for eps in EPS], ["ok", "failed", "ok", "ok", "ok"])
        fit, _ = rate_claims(table, "tau", 0.85, 1.15)
        assert len(fit.pairs) == 4
        assert not rows_succeeded(table).passed

    def test_too_few_rows(self):
        table = self._table([0.7 * eps for eps in EPS], ["ok", "failed", "failed", "ok", "ok"])
        fit, claims = rate_claims(table, "tau", 0.85, 1.15)
        assert fit is None
        assert not claims[0].passed
