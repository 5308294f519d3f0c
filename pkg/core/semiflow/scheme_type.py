from enum import Enum

class SchemeType(Enum):
    ETD1 = "etd1"
    ETDRK2 = "etdrk2"

    @staticmethod
    def from_string(scheme_type_str: str):
        try:
            return SchemeType(scheme_type_str)
        except ValueError:
            raise ValueError(f"Invalid scheme type: '{scheme_type_str}'. Available scheme types are: {', '.join([scheme.value for scheme in SchemeType])}")
