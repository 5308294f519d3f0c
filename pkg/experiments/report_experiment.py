import asyncio
from typing import Optional
from config.experiment_config import ExperimentConfig
from utils.report_writer import load_report
from .claim_check import ClaimCheck, log_claims
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .sweep_runner import SweepRunner

class ReportExperiment(ExperimentInterface):
    """Loads a stored report so that it can be re-emitted in another format."""

    def __init__(self, config: ExperimentConfig, input_path: Optional[str], laboratory: Optional[ChannelLaboratory] = None):
        super().__init__(config, laboratory)
        if not input_path:
            raise ValueError("The report subcommand needs --input PATH")
        self.input_path = input_path

    async def run(self) -> ExperimentResult:
        loaded = await asyncio.to_thread(load_report, self.input_path)
        claims = [ClaimCheck(**claim) for claim in loaded.claims]
        if not claims:
            claims = [ClaimCheck("report loaded", not loaded.table.empty, f"{len(loaded.table)} rows from {self.input_path}")]

        metadata = dict(loaded.metadata)
        metadata["source"] = self.input_path
        if loaded.experiment:
            metadata.setdefault("source_experiment", loaded.experiment)

        result = ExperimentResult(ExperimentType.REPORT, loaded.table, loaded.fits, claims, metadata, loaded.config or None)
        self.logger.info(f"\nReport {self.input_path}:\n{SweepRunner.summary(loaded.table)}")
        log_claims(claims, self.logger)
        return result
