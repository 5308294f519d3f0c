import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence
import numpy as np
from tabulate import tabulate

@dataclass(frozen=True)
class ClaimCheck:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}

def in_range(name: str, value: float, lower: float, upper: float) -> ClaimCheck:
    passed = bool(np.isfinite(value) and lower <= value <= upper)
    return ClaimCheck(name, passed, f"{value:.6g} in [{lower:g}, {upper:g}]")

def at_most(name: str, value: float, limit: float) -> ClaimCheck:
    passed = bool(np.isfinite(value) and value <= limit)
    return ClaimCheck(name, passed, f"{value:.6g} <= {limit:g}")

def monotone_decreasing(name: str, values: Sequence[float], slack: float = 0.0) -> ClaimCheck:
    values = [float(value) for value in values]
    passed = all(b <= a + slack for a, b in zip(values, values[1:]))
    return ClaimCheck(name, passed, ", ".join(f"{value:.4g}" for value in values))

def loglog_slope(eps: Sequence[float], values: Sequence[float]) -> float:
    """Plain least-squares slope of log(value) against log(eps); nan when a value is not positive."""
    eps, values = np.asarray(eps, dtype=float), np.asarray(values, dtype=float)
    if len(eps) < 2 or np.any(values <= 0):
        return float("nan")
    return float(np.polyfit(np.log(eps), np.log(values), 1)[0])

def all_passed(claims: Iterable[ClaimCheck]) -> bool:
    return all(claim.passed for claim in claims)

def claims_table(claims: List[ClaimCheck]) -> str:
    rows = [[claim.name, "PASS" if claim.passed else "FAIL", claim.detail] for claim in claims]
    return tabulate(rows, headers=["Claim", "Result", "Detail"], tablefmt="grid")

def log_claims(claims: List[ClaimCheck], logger: logging.Logger = None):
    logger = logger or logging.getLogger(__name__)
    if not claims:
        logger.info("No claim checks recorded.")
        return
    logger.info(f"\nClaim checks:\n{claims_table(claims)}")
