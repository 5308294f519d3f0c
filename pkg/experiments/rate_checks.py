from typing import List, Optional, Tuple
import numpy as np
import pandas as pd
from .claim_check import ClaimCheck, at_most, in_range
from .exceptions import RateFitError
from .rate_fit import RateFit, fit_rate
from .rate_model import RateModel

FLOOR = 1e-10

def usable_pairs(table: pd.DataFrame, column: str) -> List[Tuple[float, float]]:
    ok = table[(table["status"] == "ok") & table[column].notna()] if "status" in table else table[table[column].notna()]
    return [(float(eps), float(value)) for eps, value in zip(ok["epsilon"], ok[column])]

def rate_claims(
    table: pd.DataFrame,
    column: str,
    lower: float,
    upper: float,
    require_log: bool = False,
    floor: float = FLOOR
) -> Tuple[Optional[RateFit], List[ClaimCheck]]:
    """
    Rate claims for one observable. A column sitting at the numerical floor on every row
    is a structural zero and passes as such; otherwise the preferred model's exponent must
    land in [lower, upper] (and be the log-corrected model when `require_log`).
    """
    pairs = usable_pairs(table, column)
    if not pairs:
        return None, [ClaimCheck(f"{column} measured", False, "no successful rows")]

    values = np.array([value for _, value in pairs])
    if np.all(values <= floor):
        return None, [at_most(f"{column} at numerical floor", float(np.max(values)), floor)]

    try:
        fit = fit_rate(pairs)
    except RateFitError as e:
        return None, [ClaimCheck(f"{column} rate fit", False, e.message)]

    claims = [in_range(f"{column} exponent ({fit.preferred.value})", fit.p, lower, upper)]
    if require_log:
        claims.append(ClaimCheck(f"{column} prefers eps^p |log eps|", fit.preferred == RateModel.LOG_CORRECTED, f"residuals {', '.join(f'{model.value}={item.residual:.3e}' for model, item in fit.fits.items())}"))
    return fit, claims

def rows_succeeded(table: pd.DataFrame) -> ClaimCheck:
    failed = table[table["status"] != "ok"]
    detail = "; ".join(f"eps={eps:.6g}: {reason}" for eps, reason in zip(failed["epsilon"], failed["reason"]))
    return ClaimCheck("all rows completed", failed.empty, detail or f"{len(table)} rows")
