from dataclasses import dataclass
from typing import Callable, Optional
import numpy as np
from scipy.interpolate import CubicSpline
from core.operators.discrete_operator import DiscreteOperator, solve_resolvent

ScalarFn = Callable[[np.ndarray], np.ndarray]

@dataclass(frozen=True, eq=False)
class LimitField:
    """
    A limit solution v_0 with its first two derivatives as functions of x.

    `nodes` are the points where the derivatives are exact (the x-nodes of a discrete
    solution); closed-form fields have none and may be evaluated anywhere.
    """
    value: ScalarFn
    first: ScalarFn
    second: ScalarFn
    nodes: Optional[np.ndarray] = None

    def evaluation_points(self, default: np.ndarray) -> np.ndarray:
        return default if self.nodes is None else self.nodes

def cosine_forcing(k: int = 1) -> ScalarFn:
    return lambda x: np.cos(k * np.pi * np.asarray(x, dtype=float))

def cosine_mode(k: int = 1, mu: float = 1.0) -> LimitField:
    """v_0 = cos(k pi x) / (mu + k^2 pi^2), the limit solution for f = cos(k pi x) when g is constant."""
    scale = 1.0 / (mu + (k * np.pi) ** 2)
    wave = k * np.pi
    return LimitField(
        lambda x: scale * np.cos(wave * np.asarray(x, dtype=float)),
        lambda x: -scale * wave * np.sin(wave * np.asarray(x, dtype=float)),
        lambda x: -scale * wave ** 2 * np.cos(wave * np.asarray(x, dtype=float)),
    )

def discrete_limit_field(op_0: DiscreteOperator, values: np.ndarray) -> LimitField:
    """
    Wraps nodal values of a limit-space field. The slope comes from a cubic spline; the
    second derivative is read off the discrete strong form w = mass^{-1} stiffness v,
    v'' = -(g'/g) v' + mu v - w, so the limit equation holds at the nodes up to the
    discrete residual.
    """
    x = op_0.x_nodes
    values = np.asarray(values, dtype=float)
    spline = CubicSpline(x, values)
    strong = op_0.apply(values)
    profile, mu = op_0.profile, op_0.config.mu

    def lookup(table: np.ndarray, points) -> np.ndarray:
        return np.interp(np.asarray(points, dtype=float), x, table)

    slope = spline.derivative()(x)
    second = -profile.g_prime(x) / profile.g(x) * slope + mu * values - strong

    return LimitField(lambda p: lookup(values, p), lambda p: lookup(slope, p), lambda p: lookup(second, p), x)

def solve_limit_field(op_0: DiscreteOperator, f: ScalarFn) -> LimitField:
    """Discrete v_0 = A_0^{-1} f for a forcing given as a function of x."""
    return discrete_limit_field(op_0, solve_resolvent(op_0, f(op_0.x_nodes)))
