from enum import Enum

class ReactionKind(Enum):
    CUBIC = "cubic"
    LINEAR = "linear"
    ZERO = "zero"

    @staticmethod
    def from_string(reaction_kind_str: str):
        try:
            return ReactionKind(reaction_kind_str)
        except ValueError:
            raise ValueError(f"Invalid reaction kind: '{reaction_kind_str}'. Available reaction kinds are: {', '.join([kind.value for kind in ReactionKind])}")
