from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import pandas as pd
from .claim_check import ClaimCheck, all_passed
from .experiment_type import ExperimentType
from .rate_fit import RateFit

@dataclass(eq=False)
class ExperimentResult:
    """Table, fits and claim checks of one subcommand run."""
    experiment: ExperimentType
    table: pd.DataFrame
    fits: Dict[str, RateFit] = field(default_factory=dict)
    claims: List[ClaimCheck] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    config_echo: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return all_passed(self.claims)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1
