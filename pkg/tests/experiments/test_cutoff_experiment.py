import numpy as np
import pytest
from core.nonlinearity.estimators import LipschitzRecord
from experiments.cutoff_experiment import COMMUTATION_FIELDS, CutoffExperiment, holder_claim, sample_pairs, random_fields
from experiments.laboratory import ChannelLaboratory

class TestRandomFields:
    def test_fields_are_reproducible(self):
        x = np.linspace(0.0, 1.0, 17)
        first = random_fields(x, 3, np.random.default_rng(5))
        second = random_fields(x, 3, np.random.default_rng(5))
        assert len(first) == 3
        assert all(field.shape == (17,) for field in first)
        np.testing.assert_array_equal(np.array(first), np.array(second))

    def test_pairs_span_the_gate(self, small_config):
        lab = ChannelLaboratory(small_config)
        op = lab.limit.nonlinear
        pairs = sample_pairs(lab, np.random.default_rng(0))
        norms = np.array([op.gate_norm(u) for u, _ in pairs]) / op.cutoff.R
        assert len(pairs) == 100
        assert np.all((norms[:8] >= 0.2 - 1e-12) & (norms[:8] <= 1.8 + 1e-12))
        assert norms.max() > 2.0
        assert norms.min() < 1.0

class TestHolderClaim:
    def test_slack(self):
        assert holder_claim(LipschitzRecord(1.0, 0.95, 2.0, 100), 1.0).passed
        assert not holder_claim(LipschitzRecord(1.0, 0.85, 2.0, 100), 1.0).passed

    def test_missing_exponent_fails(self):
        assert not holder_claim(LipschitzRecord(1.0, float("nan"), 2.0, 100), 1.0).passed

class TestCutoffExperiment:
    async def test_straight_channel_passes(self, small_config):
        result = await CutoffExperiment(small_config).run()
        assert result.passed, [claim for claim in result.claims if not claim.passed]
        assert result.exit_code == 0
        assert (result.table["commutation_max"] <= 1e-12).all()
        assert result.table["regions_exact"].astype(bool).all()
        assert result.metadata["L_F"] <= result.metadata["L_F_bound"]
        assert result.metadata["theta_F_target"] == pytest.approx(1.0)
        assert any(str(COMMUTATION_FIELDS) in claim.name for claim in result.claims)
