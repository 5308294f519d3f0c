import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional
import numpy as np
from .exceptions import InvalidReactionError
from .reaction_kind import ReactionKind
from .smoothstep import smoothstep, smoothstep_prime, smoothstep_second

LF_SAMPLES = 6001
DISSIPATIVITY_SAMPLES = 2001
LINEAR_TAPER_START = 10.0

@dataclass(frozen=True)
class ReactionTerm:
    """
    反应项 f(s, x)，带有上确界范数截断。

    The growth-form nonlinearity h(s, x) = a s - b s^3 + tilt cos(pi x) (or c s for the
    linear kind) is multiplied by a C^2 taper chi(s) that equals 1 on |s| <= M and 0 on
    |s| >= 2M, so |f| + |f'| + |f''| is bounded and f(s) s <= 0 for |s| >= M.
    """
    kind: ReactionKind
    a: float = 5.0
    b: float = 1.0
    tilt: float = 0.0
    M: float = float(np.sqrt(5.0))

    def inside_form(self, s, x=None):
        s = np.asarray(s, dtype=float)

        if self.kind == ReactionKind.ZERO:
            return np.zeros_like(s)
        elif self.kind == ReactionKind.LINEAR:
            return self.a * s

        value = self.a * s - self.b * s ** 3
        if self.tilt != 0.0:
            value = value + self.tilt * np.cos(np.pi * self._require_x(x))
        return value

    def _inside_prime(self, s):
        if self.kind == ReactionKind.ZERO:
            return np.zeros_like(s)
        elif self.kind == ReactionKind.LINEAR:
            return np.full_like(s, self.a)
        return self.a - 3.0 * self.b * s ** 2

    def _inside_second(self, s):
        if self.kind == ReactionKind.CUBIC:
            return -6.0 * self.b * s
        return np.zeros_like(s)

    def _require_x(self, x):
        if x is None:
            raise InvalidReactionError("A tilted reaction needs the x-coordinates of the nodes")
        return np.asarray(x, dtype=float)

    def _taper(self, s):
        t = (np.abs(s) - self.M) / self.M
        sign = np.sign(s)
        chi = 1.0 - smoothstep(t)
        chi_prime = -smoothstep_prime(t) * sign / self.M
        chi_second = -smoothstep_second(t) / self.M ** 2
        return chi, chi_prime, chi_second

    def f(self, s, x=None):
        s = np.asarray(s, dtype=float)
        chi, _, _ = self._taper(s)
        return chi * self.inside_form(s, x)

    def f_prime(self, s, x=None):
        """Derivative in s."""
        s = np.asarray(s, dtype=float)
        chi, chi_prime, _ = self._taper(s)
        return chi_prime * self.inside_form(s, x) + chi * self._inside_prime(s)

    def f_second(self, s, x=None):
        s = np.asarray(s, dtype=float)
        chi, chi_prime, chi_second = self._taper(s)
        return chi_second * self.inside_form(s, x) + 2.0 * chi_prime * self._inside_prime(s) + chi * self._inside_second(s)

    def primitive(self, s, x=None):
        """int_0^s f(t, x) dt by Gauss-Legendre on [0, s], piecewise across the taper."""
        s = np.asarray(s, dtype=float)
        points, weights = np.polynomial.legendre.leggauss(12)
        total = np.zeros_like(s)
        edges = (0.0, self.M, 2.0 * self.M)

        for lower, upper in zip(edges[:-1], edges[1:]):
            left = np.sign(s) * np.minimum(np.abs(s), lower)
            right = np.sign(s) * np.minimum(np.abs(s), upper)
            half = 0.5 * (right - left)
            middle = 0.5 * (right + left)
            for point, weight in zip(points, weights):
                total = total + weight * half * self.f(middle + half * point, x)
        return total

    @cached_property
    def _s_samples(self) -> np.ndarray:
        return np.linspace(-3.0 * self.M, 3.0 * self.M, LF_SAMPLES)

    def _x_extremes(self) -> np.ndarray:
        # f is affine in cos(pi x); extremes of |.| sit at cos = +-1
        return np.array([0.0, 1.0]) if self.tilt != 0.0 else np.array([0.0])

    @cached_property
    def Lf(self) -> float:
        worst = 0.0
        s = self._s_samples
        for x in self._x_extremes():
            xs = np.full_like(s, x)
            total = np.abs(self.f(s, xs)) + np.abs(self.f_prime(s, xs)) + np.abs(self.f_second(s, xs))
            worst = max(worst, float(np.max(total)))
        return worst

    @cached_property
    def sup_f(self) -> float:
        s = self._s_samples
        return max(float(np.max(np.abs(self.f(s, np.full_like(s, x))))) for x in self._x_extremes())

    @cached_property
    def sup_f_prime(self) -> float:
        s = self._s_samples
        return max(float(np.max(np.abs(self.f_prime(s, np.full_like(s, x))))) for x in self._x_extremes())

    def dissipativity_defect(self) -> float:
        """max of f(s) s over |s| in [M, 3M]; non-positive for a dissipative reaction."""
        magnitudes = np.linspace(self.M, 3.0 * self.M, DISSIPATIVITY_SAMPLES)
        s = np.concatenate([-magnitudes, magnitudes])
        return max(float(np.max(self.f(s, np.full_like(s, x)) * s)) for x in self._x_extremes())

def build_reaction(kind: ReactionKind, a: float = 5.0, b: float = 1.0, tilt: float = 0.0, M: Optional[float] = None) -> ReactionTerm:
    """
    Builds a reaction term; M defaults to sqrt(a/b) for the cubic kind.

    Raises:
        InvalidReactionError: Non-positive M, or a cubic reaction that is not dissipative beyond M.
    """
    if isinstance(kind, str):
        kind = ReactionKind.from_string(kind)

    if M is None:
        if kind == ReactionKind.CUBIC:
            if b <= 0:
                raise InvalidReactionError(f"Cubic coefficient b must be positive, got {b}")
            M = float(np.sqrt(a / b))
        else:
            M = LINEAR_TAPER_START

    if not M > 0:
        raise InvalidReactionError(f"Dissipativity threshold M must be positive, got {M}")

    if tilt != 0.0 and kind != ReactionKind.CUBIC:
        raise InvalidReactionError(f"Tilt is only defined for the cubic reaction, got kind '{kind.value}'")

    reaction = ReactionTerm(kind, float(a), float(b), float(tilt), float(M))

    if kind == ReactionKind.CUBIC:
        defect = reaction.dissipativity_defect()
        if defect > 1e-12 * reaction.M ** 2:
            logging.getLogger(__name__).error(f"Reaction with a={a}, b={b}, tilt={tilt} has f(s)s = {defect:.4g} > 0 beyond M={M}")
            raise InvalidReactionError(f"f(s)s <= 0 fails for |s| >= M={M:.6g} (max {defect:.4g}); increase M")

    return reaction

def nemytskii(u: np.ndarray, reaction: ReactionTerm, x: Optional[np.ndarray] = None) -> np.ndarray:
    """Pointwise f(u) at the nodes; x holds the node x-coordinates (needed when tilted)."""
    return reaction.f(u, x)
