import numpy as np
import pandas as pd
import pytest
from experiments.attractor_pipeline import RATE_TARGETS, chain_ratio, pipeline_claims
from experiments.rate_model import RateModel

EPS = np.array([0.2, 0.1, 0.05, 0.025, 0.0125])

def log_law(eps, p=1.0):
    return eps ** p * np.abs(np.log(eps))

@pytest.fixture
def sweep_table():
    reference = 0.3 * log_law(EPS)
    return pd.DataFrame({
        "epsilon": EPS,
        "status": "ok",
        "reason": "",
        "tau": 2.0 * EPS,
        "rho": 0.0,
        "beta": 1e-9,
        "graph_dist": 0.5 * log_law(EPS),
        "reduced_map_dist": 0.7 * log_law(EPS),
        "time_one_dist": 0.9 * log_law(EPS),
        "attractor_dist_reduced": 0.2 * log_law(EPS),
        "attractor_dist_H1Q": reference,
        "attractor_dist_H1Qeps": np.sqrt(EPS) * reference,
        "bound_holds": True,
        "bound_margin": 0.1,
    })

def claim(claims, name):
    return next(item for item in claims if item.name == name)

class TestPipelineClaims:
    def test_every_rate_target_is_asserted(self, sweep_table):
        fits, claims = pipeline_claims(sweep_table, 2)
        names = [item.name for item in claims]
        for column, _, require_log in RATE_TARGETS:
            assert any(name.startswith(f"{column} exponent") for name in names)
            assert column in fits
            if require_log:
                assert claim(claims, f"{column} prefers eps^p |log eps|").passed
        assert fits["attractor_dist_H1Qeps"].preferred == RateModel.LOG_CORRECTED
        assert fits["attractor_dist_H1Qeps"].p == pytest.approx(1.5, abs=1e-10)
        assert all(item.passed for item in claims)

    def test_a_failing_intermediate_rate_fails_the_run(self, sweep_table):
        sweep_table["graph_dist"] = 0.5 * log_law(EPS, 2.0)
        _, claims = pipeline_claims(sweep_table, 2)
        assert not claim(claims, "graph_dist exponent (log_corrected)").passed

    def test_lifted_pair_is_exact(self, sweep_table):
        _, claims = pipeline_claims(sweep_table, 2)
        assert claim(claims, "rho of the lifted nonlinearity pair").passed

        sweep_table["rho"] = 1e-6
        _, claims = pipeline_claims(sweep_table, 2)
        assert not claim(claims, "rho of the lifted nonlinearity pair").passed

    def test_structural_zero_column_passes_at_the_floor(self, sweep_table):
        sweep_table["tau"] = 0.0
        fits, claims = pipeline_claims(sweep_table, 2)
        assert "tau" not in fits
        assert claim(claims, "tau at numerical floor").passed

    def test_chain_ratio_skips_vanishing_reduced_distance(self, sweep_table):
        sweep_table.loc[0, "attractor_dist_reduced"] = 0.0
        ratios = chain_ratio(sweep_table)
        assert np.isnan(ratios.iloc[0])
        assert ratios.iloc[1] == pytest.approx(1.5)
