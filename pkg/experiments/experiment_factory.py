from typing import Optional
from config.experiment_config import ExperimentConfig
from .attractor_distance_experiment import AttractorDistanceExperiment
from .attractor_pipeline import AttractorPipeline
from .cutoff_experiment import CutoffExperiment
from .equilibria_experiment import EquilibriaExperiment
from .expansion_experiment import ExpansionExperiment
from .experiment_interface import ExperimentInterface
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .manifold_experiment import ManifoldExperiment
from .reduced_distance_experiment import ReducedDistanceExperiment
from .report_experiment import ReportExperiment
from .resolvent_experiment import ResolventRateExperiment
from .shadowing_experiment import ShadowingExperiment
from .spectrum_experiment import SpectrumExperiment

class ExperimentFactory:
    @staticmethod
    def create(
        experiment_type: ExperimentType,
        config: ExperimentConfig,
        laboratory: Optional[ChannelLaboratory] = None,
        input_path: Optional[str] = None
    ) -> ExperimentInterface:
        if experiment_type == ExperimentType.SPECTRUM:
            return SpectrumExperiment(config, laboratory)
        elif experiment_type == ExperimentType.RESOLVENT_RATE:
            return ResolventRateExperiment(config, laboratory)
        elif experiment_type == ExperimentType.EXPANSION:
            return ExpansionExperiment(config, laboratory)
        elif experiment_type == ExperimentType.EQUILIBRIA:
            return EquilibriaExperiment(config, laboratory)
        elif experiment_type == ExperimentType.MANIFOLD:
            return ManifoldExperiment(config, laboratory)
        elif experiment_type == ExperimentType.REDUCED_DISTANCE:
            return ReducedDistanceExperiment(config, laboratory)
        elif experiment_type == ExperimentType.SHADOWING:
            return ShadowingExperiment(config, laboratory)
        elif experiment_type == ExperimentType.ATTRACTOR_DISTANCE:
            return AttractorDistanceExperiment(config, laboratory)
        elif experiment_type == ExperimentType.CUTOFF:
            return CutoffExperiment(config, laboratory)
        elif experiment_type == ExperimentType.PIPELINE:
            return AttractorPipeline(config, laboratory)
        elif experiment_type == ExperimentType.REPORT:
            return ReportExperiment(config, input_path, laboratory)
        else:
            raise ValueError(f"Unknown experiment type: {experiment_type}")
