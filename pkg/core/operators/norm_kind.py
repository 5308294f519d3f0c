from enum import Enum

class NormKind(Enum):
    L2 = "L2"
    HEPS1 = "Heps1"
    XALPHA = "Xalpha"

    @staticmethod
    def from_string(norm_kind_str: str):
        try:
            return NormKind(norm_kind_str)
        except ValueError:
            raise ValueError(f"Invalid norm: '{norm_kind_str}'. Available norms are: {', '.join([kind.value for kind in NormKind])}")
