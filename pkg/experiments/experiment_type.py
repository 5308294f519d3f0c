from enum import Enum

class ExperimentType(Enum):
    SPECTRUM = "spectrum"
    RESOLVENT_RATE = "resolvent-rate"
    EXPANSION = "expansion"
    EQUILIBRIA = "equilibria"
    MANIFOLD = "manifold"
    REDUCED_DISTANCE = "reduced-distance"
    SHADOWING = "shadowing"
    ATTRACTOR_DISTANCE = "attractor-distance"
    CUTOFF = "cutoff"
    PIPELINE = "theorem22"
    REPORT = "report"

    @staticmethod
    def from_string(experiment_type_str: str):
        try:
            return ExperimentType(experiment_type_str)
        except ValueError:
            raise ValueError(f"Invalid experiment type: '{experiment_type_str}'. Available experiments are: {', '.join([experiment.value for experiment in ExperimentType])}")
