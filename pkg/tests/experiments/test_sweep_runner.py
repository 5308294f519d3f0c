from types import SimpleNamespace
import pandas as pd
import pytest
from experiments.attractor_pipeline import AttractorPipeline
from experiments.cutoff_experiment import CutoffExperiment
from experiments.exceptions import EmptySweepError
from experiments.experiment_factory import ExperimentFactory
from experiments.experiment_type import ExperimentType
from experiments.laboratory import ChannelLaboratory
from experiments.report_experiment import ReportExperiment
from experiments.resolvent_experiment import ResolventRateExperiment
from experiments.spectrum_experiment import SpectrumExperiment
from experiments.sweep_runner import SweepRunner

@pytest.fixture
def fake_lab():
    calls = []
    return SimpleNamespace(
        config=SimpleNamespace(eps_list=(0.5, 0.25, 0.125, 0.0625), threads=2),
        warm_up=lambda: calls.append("warm"),
        calls=calls,
    )

def square_row(laboratory, epsilon):
    if epsilon == 0.25:
        raise ArithmeticError("singular pencil")
    return {"epsilon": epsilon, "value": epsilon ** 2}

class TestSweepRunner:
    async def test_rows_come_back_in_epsilon_order(self, fake_lab):
        table = await SweepRunner(fake_lab).run(square_row)
        assert table["epsilon"].tolist() == [0.5, 0.25, 0.125, 0.0625]
        assert list(table.columns[:3]) == ["epsilon", "status", "reason"]
        assert fake_lab.calls == ["warm"]

    async def test_failed_row_does_not_stop_the_sweep(self, fake_lab):
        runner = SweepRunner(fake_lab, threads=1)
        table = await runner.run(square_row)
        assert table["status"].tolist() == ["ok", "failed", "ok", "ok"]
        assert "ArithmeticError" in table.loc[1, "reason"]
        assert table.loc[2, "value"] == pytest.approx(0.015625)
        assert isinstance(runner.errors[0.25], ArithmeticError)

    async def test_requested_columns(self, fake_lab):
        table = await SweepRunner(fake_lab).run(square_row, [0.5, 0.125], ["epsilon", "status", "value", "missing"])
        assert list(table.columns) == ["epsilon", "status", "value", "missing"]
        assert table["missing"].isna().all()

    async def test_empty_epsilon_list(self, fake_lab):
        with pytest.raises(EmptySweepError):
            await SweepRunner(fake_lab).run(square_row, [])

    def test_summary_table(self):
        table = pd.DataFrame({"epsilon": [0.5], "status": ["ok"], "tau": [0.01]})
        assert "tau" in SweepRunner.summary(table, ["epsilon", "tau"])

class TestExperimentFactory:
    def test_creates_the_requested_experiment(self, small_config):
        lab = ChannelLaboratory(small_config)
        assert isinstance(ExperimentFactory.create(ExperimentType.SPECTRUM, small_config, lab), SpectrumExperiment)
        assert isinstance(ExperimentFactory.create(ExperimentType.RESOLVENT_RATE, small_config, lab), ResolventRateExperiment)
        assert isinstance(ExperimentFactory.create(ExperimentType.REPORT, small_config, lab, "results/report.json"), ReportExperiment)
        assert isinstance(ExperimentFactory.create(ExperimentType.CUTOFF, small_config, lab), CutoffExperiment)
        assert isinstance(ExperimentFactory.create(ExperimentType.from_string("theorem22"), small_config, lab), AttractorPipeline)

    def test_unknown_type(self):
        with pytest.raises(ValueError, match="Available experiments"):
            ExperimentType.from_string("bifurcation")

class TestResolventRateExperiment:
    async def test_straight_channel_passes(self, small_config):
        result = await ResolventRateExperiment(small_config).run()
        assert result.passed
        assert result.exit_code == 0
        assert (result.table["status"] == "ok").all()
        assert (result.table["tau"] <= 1e-8).all()
        assert len(result.table) == len(small_config.eps_list)
