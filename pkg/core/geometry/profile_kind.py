from enum import Enum

class ProfileKind(Enum):
    CONSTANT = "constant"
    SINE = "sine"
    POLYNOMIAL = "polynomial"

    @staticmethod
    def from_string(profile_kind_str: str):
        try:
            return ProfileKind(profile_kind_str)
        except ValueError:
            raise ValueError(f"Invalid profile kind: '{profile_kind_str}'. Available profile kinds are: {', '.join([kind.value for kind in ProfileKind])}")
