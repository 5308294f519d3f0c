from dataclasses import dataclass
from typing import Optional, Tuple
from core.geometry.profile_kind import ProfileKind
from core.nonlinearity.reaction_kind import ReactionKind
from core.semiflow.scheme_type import SchemeType
from utils.report_format import ReportFormat
from .exceptions import ConfigValidationError

SCHEMA_VERSION = "1.0"
MIN_NX = 8
MIN_NZ = 4
MIN_N1D = 16

@dataclass(frozen=True)
class ExperimentConfig:
    """
    实验配置 (experiment configuration).

    Everything one run needs; `R=None` and `m=None` stand for "auto". CLI overrides are
    applied with dataclasses.replace, which re-runs the checks below.
    """
    profile_kind: ProfileKind = ProfileKind.SINE
    profile_params: Tuple[float, ...] = (0.3,)
    dimension: int = 2
    mu: float = 1.0
    alpha: float = 0.25
    reaction_kind: ReactionKind = ReactionKind.CUBIC
    reaction_a: float = 5.0
    reaction_b: float = 1.0
    tilt: float = 0.0
    M: Optional[float] = None
    R: Optional[float] = None
    nx: int = 128
    nz: int = 32
    n1d: int = 1024
    dense_limit: int = 4500
    dt: float = 1.0 / 256
    scheme: SchemeType = SchemeType.ETD1
    n_modes: int = 12
    samples_per_unit: int = 20
    m: Optional[int] = 1
    m_max: int = 3
    nodes_per_axis: int = 41
    enforce_gap: bool = False
    max_iterations: int = 200
    window: int = 50
    deltas: Tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    samples_per_delta: int = 3
    equilibrium_seeds: Tuple[float, ...] = (-2.5, -0.5, 0.0, 0.5, 2.5)
    eps_list: Tuple[float, ...] = tuple(2.0 ** -k for k in range(3, 8))
    seed: int = 0
    threads: int = 1
    output_directory: str = "results"
    output_format: ReportFormat = ReportFormat.CSV
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self):
        invalid = []
        eps = list(self.eps_list)
        if not eps or any(not 0 < e <= 1 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            invalid.append("sweep.eps_list")
        if not 0 < self.alpha < 0.5:
            invalid.append("operator.alpha")
        if not self.mu > 0:
            invalid.append("operator.mu")
        if self.nx < MIN_NX:
            invalid.append("discretization.nx")
        if self.nz < MIN_NZ:
            invalid.append("discretization.nz")
        if self.n1d < MIN_N1D:
            invalid.append("discretization.n1d")
        if self.R is not None and not self.R > 0:
            invalid.append("cutoff.R")
        if self.m is not None and not 1 <= self.m <= self.m_max:
            invalid.append("manifold.m")
        if self.n_modes < self.m_max + 1:
            invalid.append("dynamics.n_modes")
        if self.threads < 1:
            invalid.append("sweep.threads")
        if self.window < 10:
            invalid.append("shadowing.window")
        if self.schema_version != SCHEMA_VERSION:
            invalid.append("schema_version")
        if invalid:
            raise ConfigValidationError(invalid_fields=invalid)

    @property
    def is_straight(self) -> bool:
        return self.profile_kind == ProfileKind.CONSTANT

    def summary(self) -> dict:
        """Plain-type echo of the settings, embedded in reports (seed included)."""
        return {
            "schema_version": self.schema_version,
            "profile": {"kind": self.profile_kind.value, "params": list(self.profile_params), "dimension": self.dimension},
            "operator": {"mu": self.mu, "alpha": self.alpha},
            "reaction": {"kind": self.reaction_kind.value, "a": self.reaction_a, "b": self.reaction_b, "tilt": self.tilt, "M": self.M},
            "cutoff": {"R": "auto" if self.R is None else self.R},
            "discretization": {"nx": self.nx, "nz": self.nz, "n1d": self.n1d, "dense_limit": self.dense_limit},
            "dynamics": {"dt": self.dt, "scheme": self.scheme.value, "n_modes": self.n_modes, "samples_per_unit": self.samples_per_unit},
            "manifold": {"m": "auto" if self.m is None else self.m, "m_max": self.m_max, "nodes_per_axis": self.nodes_per_axis, "enforce_gap": self.enforce_gap},
            "shadowing": {"window": self.window, "deltas": list(self.deltas), "samples_per_delta": self.samples_per_delta},
            "sweep": {"eps_list": list(self.eps_list), "seed": self.seed},
        }
