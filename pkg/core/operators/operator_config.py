from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional
from .exceptions import InvalidOperatorConfigError

class OperatorKind(Enum):
    A_EPS = "A_eps"
    A_0 = "A_0"

    @staticmethod
    def from_string(operator_kind_str: str):
        try:
            return OperatorKind(operator_kind_str)
        except ValueError:
            raise ValueError(f"Invalid operator kind: '{operator_kind_str}'. Available operator kinds are: {', '.join([kind.value for kind in OperatorKind])}")

@dataclass(frozen=True)
class OperatorConfig:
    """epsilon=None stands for the limit operator."""
    mu: float = 1.0
    epsilon: Optional[float] = None
    alpha: float = 0.25

    def __post_init__(self):
        if not self.mu > 0:
            raise InvalidOperatorConfigError("mu", self.mu)
        if not 0 < self.alpha < 0.5:
            raise InvalidOperatorConfigError("alpha", self.alpha)
        if self.epsilon is not None and not 0 < self.epsilon <= 1:
            raise InvalidOperatorConfigError("epsilon", self.epsilon)

    @property
    def is_limit(self) -> bool:
        return self.epsilon is None

    def with_epsilon(self, epsilon: Optional[float]) -> "OperatorConfig":
        return replace(self, epsilon=epsilon)
