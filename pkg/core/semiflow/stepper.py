import logging
from typing import Optional, Tuple
import numpy as np
from core.nonlinearity.nonlinear_operator import NonlinearOperator
from core.operators.eigen_basis import EigenBasis
from .exceptions import BlowUpError
from .scheme_type import SchemeType

DEFAULT_DT = 1.0 / 256
BLOW_UP_FACTOR = 10.0

def galerkin_cut(basis_0: EigenBasis, n_modes: int) -> float:
    """Midpoint between the n_modes-th and next limit eigenvalue."""
    if n_modes >= basis_0.count:
        raise ValueError(f"Galerkin cut after {n_modes} modes needs at least {n_modes + 1} limit eigenvalues")
    return 0.5 * float(basis_0.values[n_modes - 1] + basis_0.values[n_modes])

class Stepper:
    """
    指数时间差分积分器（模态空间）

    Integrates c' = -Lambda c + V^T M F(V c) on the coefficients of a Galerkin basis.
    ETD1: c <- e^{-lambda dt} c + (1 - e^{-lambda dt}) / lambda N(c); ETDRK2 adds the
    Cox-Matthews corrector. Linear-only problems are propagated exactly mode by mode.
    """
    def __init__(
        self,
        basis: EigenBasis,
        nonlinear_op: NonlinearOperator,
        dt: float = DEFAULT_DT,
        scheme: SchemeType = SchemeType.ETD1
    ):
        self.logger = logging.getLogger(self.__class__.__name__)

        if isinstance(scheme, str):
            scheme = SchemeType.from_string(scheme)

        if not dt > 0:
            raise ValueError(f"Time step must be positive, got {dt}")

        self.basis = basis
        self.nonlinear_op = nonlinear_op
        self.dt = dt
        self.scheme = scheme
        self.blow_up_bound = BLOW_UP_FACTOR * nonlinear_op.reaction.M

        x = basis.values * dt
        self.decay = np.exp(-x)
        self.phi1 = -np.expm1(-x) / basis.values
        self.phi2 = (np.expm1(-x) + x) / (basis.values * x)
        self.mass_vectors = (basis.operator.mass @ basis.vectors).T

    @property
    def dimension(self) -> int:
        return self.basis.count

    @property
    def steps_per_unit(self) -> int:
        return int(round(1.0 / self.dt))

    def with_nonlinearity(self, nonlinear_op: NonlinearOperator) -> "Stepper":
        return Stepper(self.basis, nonlinear_op, self.dt, self.scheme)

    def field(self, c: np.ndarray) -> np.ndarray:
        return self.basis.vectors @ c

    def coefficients(self, u: np.ndarray) -> np.ndarray:
        return self.mass_vectors @ u

    def nonlinear_term(self, c: np.ndarray, time: float = 0.0) -> np.ndarray:
        op = self.nonlinear_op
        theta = op.cutoff.theta(op.gate_norm_from_coefficients(c, self.basis))
        if theta == 0.0:
            return np.zeros_like(c)

        # outside the cut-off support the flow is linear decay
        u = self.field(c)
        sup_norm = float(np.max(np.abs(u)))
        if sup_norm > self.blow_up_bound:
            raise BlowUpError(time, sup_norm, self.blow_up_bound)
        return theta * (self.mass_vectors @ op.nemytskii(u))

    def vector_field(self, c: np.ndarray) -> np.ndarray:
        return -self.basis.values * c + self.nonlinear_term(c)

    def jacobian(self, c: np.ndarray) -> np.ndarray:
        """Jacobian of the Galerkin vector field, including the rank-one cut-off term."""
        op = self.nonlinear_op
        u = self.field(c)
        squared = op.gate_norm_from_coefficients(c, self.basis) ** 2
        theta = float(op.cutoff.theta_hat(squared))
        slope = float(op.cutoff.theta_hat_prime(squared))

        weighted = self.basis.vectors * op.reaction.f_prime(u, op.x_nodes)[:, None]
        jacobian = theta * (self.mass_vectors @ weighted)
        if slope != 0.0:
            load = self.mass_vectors @ op.nemytskii(u)
            jacobian += slope * np.outer(load, op.gate_gradient_from_coefficients(c, self.basis))
        jacobian[np.diag_indices_from(jacobian)] -= self.basis.values
        return jacobian

    def step(self, c: np.ndarray, time: float = 0.0) -> np.ndarray:
        n0 = self.nonlinear_term(c, time)
        predicted = self.decay * c + self.phi1 * n0
        if self.scheme == SchemeType.ETD1:
            return predicted
        n1 = self.nonlinear_term(predicted, time + self.dt)
        return predicted + self.phi2 * (n1 - n0)

    def flow(self, c: np.ndarray, t: float = 1.0) -> np.ndarray:
        steps = int(round(t / self.dt))
        for k in range(steps):
            c = self.step(c, k * self.dt)
        return c

    def trajectory(self, c: np.ndarray, t: float, sample_every: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """Returns (times, coefficient samples) every `sample_every` steps, initial state included."""
        steps = int(round(t / self.dt))
        times, samples = [0.0], [c.copy()]
        for k in range(1, steps + 1):
            c = self.step(c, (k - 1) * self.dt)
            if k % sample_every == 0:
                times.append(k * self.dt)
                samples.append(c.copy())
        return np.array(times), np.array(samples)

def time_one_map(u: np.ndarray, stepper: Stepper, nonlinear_op: Optional[NonlinearOperator] = None) -> np.ndarray:
    """S(1)u for the Galerkin projection of u."""
    if nonlinear_op is not None:
        stepper = stepper.with_nonlinearity(nonlinear_op)
    return stepper.field(stepper.flow(stepper.coefficients(u), 1.0))
