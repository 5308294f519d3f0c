import logging
from dataclasses import dataclass
from typing import Optional
import numpy as np
from core.operators.eigen_basis import EigenBasis

MIN_GROWTH_EIGENVALUES = 20
GROWTH_SLACK = 0.1
INDEX_OFFSETS = (-1, 0, 1)

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class GapReport:
    """
    Spectral gap test for dimension m:
    gap = lambda_{m+1} - lambda_m >= 3 (kappa + 2) L_F (lambda_m^alpha + lambda_{m+1}^alpha) and
    lambda_m^(1 - alpha) >= 6 (kappa + 2) L_F / (1 - alpha).
    """
    m: int
    gap: float
    gap_threshold: float
    eigen_threshold: float
    eigen_power: float
    satisfied: bool

def _report(values: np.ndarray, m: int, L_F: float, kappa: float, alpha: float) -> GapReport:
    lower, upper = float(values[m - 1]), float(values[m])
    gap = upper - lower
    gap_threshold = 3.0 * (kappa + 2.0) * L_F * (lower ** alpha + upper ** alpha)
    eigen_threshold = 6.0 * (kappa + 2.0) * L_F / (1.0 - alpha)
    eigen_power = lower ** (1.0 - alpha)
    satisfied = gap > 0 and gap >= gap_threshold and eigen_power >= eigen_threshold
    return GapReport(m, gap, gap_threshold, eigen_threshold, eigen_power, satisfied)

def select_gap_dimension(basis0: EigenBasis, L_F: float, kappa: float = 1.0, alpha: Optional[float] = None, m_max: int = 3) -> GapReport:
    """
    Smallest m <= m_max passing both gap conditions; otherwise the unsatisfied report with
    the largest gap / threshold ratio.
    """
    alpha = basis0.alpha if alpha is None else alpha

    if basis0.count < m_max + 1:
        raise ValueError(f"Gap selection up to m={m_max} needs {m_max + 1} eigenvalues, got {basis0.count}")

    reports = [_report(basis0.values, m, L_F, kappa, alpha) for m in range(1, m_max + 1)]

    for report in reports:
        if report.satisfied:
            logger.info(f"Gap condition holds for m={report.m}: gap {report.gap:.6g} >= {report.gap_threshold:.6g}")
            return report

    best = max(reports, key=lambda report: report.gap / report.gap_threshold if report.gap_threshold > 0 else np.inf)
    logger.warning(f"No m <= {m_max} passes the gap condition for L_F={L_F:.4g}; best candidate m={best.m}")
    return best

def gap_report_for(basis0: EigenBasis, m: int, L_F: float, kappa: float = 1.0, alpha: Optional[float] = None) -> GapReport:
    """Gap report for a fixed dimension m."""
    if not 1 <= m < basis0.count:
        raise ValueError(f"Gap report for m={m} needs {m + 1} eigenvalues, got {basis0.count}")
    return _report(basis0.values, m, L_F, kappa, basis0.alpha if alpha is None else alpha)

@dataclass(frozen=True)
class GapGrowthReport:
    N0: Optional[int]
    offset: int
    slope: float
    satisfied: bool

def gap_growth_check(basis0: EigenBasis) -> GapGrowthReport:
    """
    Finds the first index N0 from which pi^2 (m + 1) (1 - 0.1) <= lambda_{m+1} - lambda_m <= 3 pi^2 (m + 1) (1 + 0.1)
    under the index shift (m -> m + offset, offset in {-1, 0, 1}) with the smallest N0.
    Only the resolved lower half of the spectrum is scanned.
    """
    if basis0.count < MIN_GROWTH_EIGENVALUES:
        raise ValueError(f"Gap growth check needs at least {MIN_GROWTH_EIGENVALUES} eigenvalues, got {basis0.count}")

    resolved = basis0.values[:max(MIN_GROWTH_EIGENVALUES, basis0.count // 2)]
    gaps = np.diff(resolved)
    indices = np.arange(1, len(gaps) + 1)
    slope = float(np.polyfit(indices, gaps, 1)[0])

    best = GapGrowthReport(None, 0, slope, False)
    for offset in INDEX_OFFSETS:
        m = indices + offset
        lower = np.pi ** 2 * (m + 1) * (1.0 - GROWTH_SLACK)
        upper = 3.0 * np.pi ** 2 * (m + 1) * (1.0 + GROWTH_SLACK)
        inside = (gaps >= lower) & (gaps <= upper)
        failing = np.nonzero(~inside)[0]
        first = 1 if failing.size == 0 else int(failing[-1]) + 2
        if first > len(gaps):
            continue
        if best.N0 is None or first < best.N0:
            best = GapGrowthReport(first, offset, slope, slope > 0)

    if not best.satisfied:
        logger.warning(f"Linear gap growth not observed (slope {slope:.4g})")
    return best
