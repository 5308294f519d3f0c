import logging
from dataclasses import dataclass
from typing import Callable, Optional
import numpy as np
from scipy.integrate import cumulative_trapezoid, simpson
from core.geometry.channel_profile import ChannelProfile
from core.operators.fem_assembly import assemble_1d
from .closed_form_field import LimitField, ScalarFn
from .exceptions import CompatibilityError

COMPATIBILITY_TOLERANCE = 1e-10
CELL_NODES = 101

logger = logging.getLogger(__name__)

def _cross_section_measures(profile: ChannelProfile, x) -> tuple:
    """|Gamma_x| and |d Gamma_x| for the ball of radius r(x) in R^(d-1)."""
    n = profile.d - 1
    r = profile.r(x)
    return profile.omega * r ** n, n * profile.omega * r ** (n - 1)

def cell_source(field: LimitField, f: ScalarFn, x, mu: float = 1.0) -> np.ndarray:
    """c(x) = -v_0'' + mu v_0 - f, the right-hand side of the cross-section problem."""
    return -field.second(x) + mu * field.value(x) - f(x)

def compatibility_residual(profile: ChannelProfile, field: LimitField, f: ScalarFn, x, mu: float = 1.0) -> np.ndarray:
    """|c(x) |Gamma_x| - v_0'(x) r'(x) |d Gamma_x||, the Fredholm condition of the cell problem."""
    volume, surface = _cross_section_measures(profile, x)
    return np.abs(cell_source(field, f, x, mu) * volume - field.first(x) * profile.r_prime(x) * surface)

def compatibility_check(profile: ChannelProfile, field: LimitField, f: ScalarFn, mu: float = 1.0) -> float:
    """
    max over x of |-(1/g)(g v_0')' + mu v_0 - f|, at the field's nodes (or the profile's
    sampling points for closed-form fields).
    """
    x = field.evaluation_points(profile.sample_points)
    slope_term = profile.g_prime(x) / profile.g(x) * field.first(x)
    residual = -field.second(x) - slope_term + mu * field.value(x) - f(x)
    return float(np.max(np.abs(residual)))

def closed_form_V2(profile: ChannelProfile, c: float, x: float, rho: np.ndarray) -> np.ndarray:
    """c/(2n) (|y|^2 - n r^2/(n+2)): zero-mean solution on the ball of radius r(x) in R^n."""
    n = profile.d - 1
    r = float(profile.r(x))
    return c / (2.0 * n) * (np.asarray(rho, dtype=float) ** 2 - n * r ** 2 / (n + 2))

@dataclass(frozen=True, eq=False)
class CellSolution:
    """
    V_2 on one cross-section. For d = 2 `y` spans [-r, r] and `values` come from the P1
    Neumann solve; for d >= 3 `y` is the radius and `values` come from the radial quadrature.
    """
    x: float
    y: np.ndarray
    values: np.ndarray
    closed_form: np.ndarray
    c: float
    flux: float
    residual: float

    @property
    def deviation(self) -> float:
        return float(np.max(np.abs(self.values - self.closed_form)))

def _neumann_solve(y: np.ndarray, c: float, flux: float) -> np.ndarray:
    """P1 solve of V'' = c on [y_0, y_N] with V'(+-r) = +-flux, zero mean."""
    stiffness = assemble_1d(y, None, "stiffness").toarray()
    mass_row = assemble_1d(y, None, "mass") @ np.ones(len(y))

    load = -c * mass_row
    load[0] += flux
    load[-1] += flux

    bordered = np.zeros((len(y) + 1, len(y) + 1))
    bordered[:-1, :-1] = stiffness
    bordered[:-1, -1] = mass_row
    bordered[-1, :-1] = mass_row
    values = np.linalg.solve(bordered, np.append(load, 0.0))[:-1]

    # nodal values are exact; Simpson's rule integrates the quadratic exactly
    return values - simpson(values, x=y) / (y[-1] - y[0])

def _radial_solve(rho: np.ndarray, n: int, flux: float) -> np.ndarray:
    """
    Radial solve of rho^(1-n) (rho^(n-1) V')' = c on [0, r] with V'(0) = 0 and V'(r) = flux,
    where compatibility fixes c = n flux / r.
    V' is linear in rho, so the trapezoid rule integrates it exactly; the mean carries the
    weight rho^(n-1) of the ball.
    """
    r = rho[-1]
    values = cumulative_trapezoid(flux * rho / r, rho, initial=0.0)
    weight = rho ** (n - 1)
    return values - simpson(values * weight, x=rho) / simpson(weight, x=rho)

def solve_cell_V2(
    profile: ChannelProfile,
    field: LimitField,
    f: ScalarFn,
    x: float,
    mu: float = 1.0,
    nodes: int = CELL_NODES,
    tolerance: float = COMPATIBILITY_TOLERANCE
) -> CellSolution:
    """
    Solves Delta_y V_2 = c(x) on Gamma_x with flux grad_y V_2 . nu = v_0'(x) r'(x) and zero
    mean over the cross-section.

    Raises:
        CompatibilityError: If the Fredholm residual at x exceeds `tolerance`.
    """
    residual = float(compatibility_residual(profile, field, f, x, mu))
    if residual > tolerance:
        raise CompatibilityError(x, residual, tolerance)

    c = float(cell_source(field, f, x, mu))
    flux = float(field.first(x) * profile.r_prime(x))
    r = float(profile.r(x))
    count = nodes if nodes % 2 == 1 else nodes + 1

    if profile.d == 2:
        y = np.linspace(-r, r, count)
        values = _neumann_solve(y, c, flux)
    else:
        y = np.linspace(0.0, r, count)
        values = _radial_solve(y, profile.d - 1, flux)

    return CellSolution(float(x), y, values, closed_form_V2(profile, c, x, y), c, flux, residual)

def grad_y_V2_norm(profile: ChannelProfile, field: LimitField, f: ScalarFn, mu: float = 1.0, x: Optional[np.ndarray] = None) -> float:
    """
    ||grad_y V_2||_{L2(Q)} from the closed-form cross-section solution:
    int_0^1 c(x)^2 omega r^(n+2) / (n (n+2)) dx with n = d - 1.
    """
    n = profile.d - 1
    x = field.evaluation_points(profile.sample_points) if x is None else np.asarray(x, dtype=float)
    c = cell_source(field, f, x, mu)
    density = c ** 2 * profile.omega * profile.r(x) ** (n + 2) / (n * (n + 2))
    return float(np.sqrt(simpson(density, x=x)))

@dataclass(frozen=True, eq=False)
class ExpansionTerms:
    """u_eps = V_0 + eps^2 V_2 + ...; V_1 and V_3 vanish, V_4 and higher are not computed."""
    v0: LimitField
    V2: Callable[[float, np.ndarray], np.ndarray]
    grad_y_V2_norm: float
    odd_terms_zero: bool = True

def expansion_terms(profile: ChannelProfile, field: LimitField, f: ScalarFn, mu: float = 1.0) -> ExpansionTerms:
    def V2(x: float, y: np.ndarray) -> np.ndarray:
        return closed_form_V2(profile, float(cell_source(field, f, x, mu)), x, np.abs(y))

    norm = grad_y_V2_norm(profile, field, f, mu)
    logger.debug(f"Expansion terms: ||grad_y V2|| = {norm:.6g}")
    return ExpansionTerms(field, V2, norm)
