import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Tuple
import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq, minimize_scalar
from scipy.special import gamma, jv, jvp
from .exceptions import InvalidProfileError, UnsupportedDimensionError
from .profile_kind import ProfileKind

PROFILE_SAMPLES = 2001

@dataclass(frozen=True)
class ChannelProfile:
    """
    Closed-form channel profile r(x) on [0, 1] with exact derivative.

    The thin channel has cross-sections that are balls of radius r(x) in R^{d-1};
    g(x) = omega * r(x)^(d-1) is the cross-section measure.
    """
    kind: ProfileKind
    params: Tuple[float, ...]
    d: int = 2
    _poly: Polynomial = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == ProfileKind.POLYNOMIAL:
            object.__setattr__(self, "_poly", Polynomial(np.asarray(self.params, dtype=float)))
        else:
            object.__setattr__(self, "_poly", None)

    @cached_property
    def omega(self) -> float:
        n = self.d - 1
        return float(np.pi ** (n / 2) / gamma(n / 2 + 1))

    def r(self, x):
        x = np.asarray(x, dtype=float)

        if self.kind == ProfileKind.CONSTANT:
            return np.full_like(x, self.params[0])
        elif self.kind == ProfileKind.SINE:
            base, amplitude = self._sine_coefficients()
            return base + amplitude * np.sin(np.pi * x)
        return self._poly(x)

    def r_prime(self, x):
        x = np.asarray(x, dtype=float)

        if self.kind == ProfileKind.CONSTANT:
            return np.zeros_like(x)
        elif self.kind == ProfileKind.SINE:
            _, amplitude = self._sine_coefficients()
            return amplitude * np.pi * np.cos(np.pi * x)
        return self._poly.deriv()(x)

    def g(self, x):
        return self.omega * self.r(x) ** (self.d - 1)

    def g_prime(self, x):
        return self.omega * (self.d - 1) * self.r(x) ** (self.d - 2) * self.r_prime(x)

    @cached_property
    def sample_points(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, PROFILE_SAMPLES)

    @cached_property
    def r_min(self) -> float:
        return float(np.min(self.r(self.sample_points)))

    @cached_property
    def g_bounds(self) -> Tuple[float, float]:
        values = self.g(self.sample_points)
        return float(np.min(values)), float(np.max(values))

    @property
    def is_straight(self) -> bool:
        return bool(np.max(np.abs(self.r_prime(self.sample_points))) == 0.0)

    def _sine_coefficients(self) -> Tuple[float, float]:
        if len(self.params) == 1:
            return 1.0, float(self.params[0])
        return float(self.params[0]), float(self.params[1])

def build_profile(kind: ProfileKind, params: Sequence[float], d: int = 2) -> ChannelProfile:
    """
    Builds a channel profile and checks that it defines a diffeomorphic channel.

    Args:
        kind: Profile family.
        params: constant -> [c]; sine -> [a] (r = 1 + a sin(pi x)) or [b, a]; polynomial -> coefficients c0, c1, ...
        d: Spatial dimension of the channel.

    Raises:
        InvalidProfileError: If r(x) <= 0 somewhere on [0, 1].
    """
    if isinstance(kind, str):
        kind = ProfileKind.from_string(kind)

    if d < 2:
        raise UnsupportedDimensionError(f"Channel dimension must be at least 2, got {d}")

    if not params:
        raise ValueError(f"Profile '{kind.value}' needs at least one parameter")

    profile = ChannelProfile(kind, tuple(float(p) for p in params), int(d))

    if profile.r_min <= 0:
        logging.getLogger(__name__).error(f"Rejected profile {kind.value}{tuple(params)}: min r = {profile.r_min}")
        raise InvalidProfileError(profile.r_min)

    return profile

def _ball_neumann_root(n: int) -> float:
    """First positive zero of d/ds [s^(1-n/2) J_{n/2}(s)], the second Neumann eigenvalue root of the unit ball in R^n."""
    if n == 1:
        return np.pi / 2
    nu = n / 2

    def radial_derivative(s):
        return s ** (1 - nu) * jvp(nu, s) + (1 - nu) * s ** (-nu) * jv(nu, s)

    grid = np.arange(0.05, 20.0, 0.01)
    values = radial_derivative(grid)
    sign_change = np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]
    first = sign_change[0]
    return float(brentq(radial_derivative, grid[first], grid[first + 1], xtol=1e-14))

def cross_section_poincare(profile: ChannelProfile, x: float) -> float:
    """Second Neumann eigenvalue of the cross-section ball of radius r(x)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    root = _ball_neumann_root(profile.d - 1)
    return float((root / profile.r(x)) ** 2)

def poincare_constants(profile: ChannelProfile) -> Tuple[float, float, float]:
    """
    Returns (lambda_hat_2, x_at_min, beta) with lambda_hat_2 the minimum over x of the
    cross-section Poincare eigenvalue and beta = 1 / lambda_hat_2.
    """
    xs = profile.sample_points
    radii = profile.r(xs)
    index = int(np.argmax(radii))
    x_star, r_star = float(xs[index]), float(radii[index])

    lower, upper = xs[max(index - 1, 0)], xs[min(index + 1, len(xs) - 1)]
    refined = minimize_scalar(lambda s: -float(profile.r(s)), bounds=(lower, upper), method="bounded", options={"xatol": 1e-12})
    if refined.success and -refined.fun > r_star:
        x_star, r_star = float(refined.x), float(-refined.fun)

    root = _ball_neumann_root(profile.d - 1)
    lambda_hat_2 = (root / r_star) ** 2
    return lambda_hat_2, x_star, 1.0 / lambda_hat_2

def to_thin_domain_norm(value, epsilon: float, d: int):
    """Maps an L2 or energy norm on the reference domain to the thin channel: ||.||_{Q_eps} = eps^((d-1)/2) ||.||_Q."""
    return epsilon ** ((d - 1) / 2) * np.asarray(value)
