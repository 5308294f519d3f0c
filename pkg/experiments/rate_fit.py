import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple
import numpy as np
from .exceptions import RateFitError
from .rate_model import RateModel

MIN_PAIRS = 4
TIE_TOLERANCE = 1e-12

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class ModelFit:
    model: RateModel
    p: float
    C: float
    residual: float
    spread: float

    def predict(self, eps) -> np.ndarray:
        eps = np.asarray(eps, dtype=float)
        values = self.C * eps ** self.p
        if self.model == RateModel.LOG_CORRECTED:
            values = values * np.abs(np.log(eps))
        return values

@dataclass(frozen=True)
class RateFit:
    """
    收敛速率拟合 (rate fit).

    One least-squares fit per candidate model; `preferred` is the model with the smaller
    residual, the plain power law winning ties.
    """
    fits: Dict[RateModel, ModelFit]
    preferred: RateModel
    pairs: List[Tuple[float, float]] = field(default_factory=list)

    @property
    def best(self) -> ModelFit:
        return self.fits[self.preferred]

    @property
    def model(self) -> RateModel:
        return self.preferred

    @property
    def p(self) -> float:
        return self.best.p

    @property
    def C(self) -> float:
        return self.best.C

    @property
    def residual(self) -> float:
        return self.best.residual

    def curve(self, model: RateModel = None) -> List[Tuple[float, float, float]]:
        """(eps, value, fitted) triples of the chosen (default preferred) model."""
        fit = self.fits[model or self.preferred]
        fitted = fit.predict([eps for eps, _ in self.pairs])
        return [(eps, value, float(y)) for (eps, value), y in zip(self.pairs, fitted)]

def _design(eps: np.ndarray, values: np.ndarray, model: RateModel) -> Tuple[np.ndarray, np.ndarray]:
    target = np.log(values)
    if model == RateModel.LOG_CORRECTED:
        target = target - np.log(np.abs(np.log(eps)))
    return np.column_stack([np.ones_like(eps), np.log(eps)]), target

def _solve(eps: np.ndarray, values: np.ndarray, model: RateModel) -> Tuple[float, float, float]:
    design, target = _design(eps, values, model)
    (log_C, p), *_ = np.linalg.lstsq(design, target, rcond=None)
    residual = float(np.sqrt(np.mean((design @ np.array([log_C, p]) - target) ** 2)))
    return float(p), float(np.exp(log_C)), residual

def fit_rate(pairs: Sequence[Tuple[float, float]], models: Sequence[RateModel] = (RateModel.POWER, RateModel.LOG_CORRECTED)) -> RateFit:
    """
    Least squares in log space for every candidate model. The exponent spread is the largest
    deviation of the leave-one-out exponents from the full fit.

    Raises:
        RateFitError: On fewer than 4 pairs, values <= 0 or eps outside (0, 1).
    """
    pairs = [(float(eps), float(value)) for eps, value in pairs]
    if len(pairs) < MIN_PAIRS:
        raise RateFitError(f"Rate fit needs at least {MIN_PAIRS} (eps, value) pairs, got {len(pairs)}")

    if not models:
        raise RateFitError("No candidate rate models given")

    eps = np.array([pair[0] for pair in pairs])
    values = np.array([pair[1] for pair in pairs])

    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise RateFitError(f"Rate fit needs finite positive values, got {values.tolist()}")

    if np.any((eps <= 0) | (eps >= 1)):
        raise RateFitError(f"Rate fit needs eps in (0, 1), got {eps.tolist()}")

    fits = {}
    for model in models:
        if isinstance(model, str):
            model = RateModel.from_string(model)
        p, C, residual = _solve(eps, values, model)
        left_out = [_solve(np.delete(eps, k), np.delete(values, k), model)[0] for k in range(len(eps))]
        fits[model] = ModelFit(model, p, C, residual, float(np.max(np.abs(np.array(left_out) - p))))

    ordered = sorted(fits.values(), key=lambda fit: (fit.residual, fit.model != RateModel.POWER))
    preferred = ordered[0].model
    if RateModel.POWER in fits and fits[RateModel.POWER].residual <= ordered[0].residual + TIE_TOLERANCE:
        preferred = RateModel.POWER

    result = RateFit(fits, preferred, pairs)
    logger.debug(f"Rate fit over {len(pairs)} pairs: preferred {preferred.value}, p={result.p:.4f}, residual {result.residual:.3e}")
    return result
