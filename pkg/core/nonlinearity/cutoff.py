from dataclasses import dataclass
import numpy as np
from .exceptions import NonlinearityError
from .smoothstep import smoothstep, smoothstep_prime, smoothstep_second

@dataclass(frozen=True)
class Cutoff:
    """
    Radial cut-off Theta(u) = theta_hat(||u||^2).

    theta_hat(x) = 1 on x <= R^2, 0 on x >= 4R^2, quintic smoothstep in between.
    """
    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise NonlinearityError(f"Cut-off radius must be positive, got {self.R}")

    def _t(self, x):
        return (np.asarray(x, dtype=float) - self.R ** 2) / (3.0 * self.R ** 2)

    def theta_hat(self, x):
        return 1.0 - smoothstep(self._t(x))

    def theta_hat_prime(self, x):
        return -smoothstep_prime(self._t(x)) / (3.0 * self.R ** 2)

    def theta_hat_second(self, x):
        return -smoothstep_second(self._t(x)) / (9.0 * self.R ** 4)

    def theta(self, norm: float) -> float:
        return float(self.theta_hat(norm ** 2))

    @property
    def L_theta_hat(self) -> float:
        """Lipschitz constant of theta_hat' (max |S''| = 10/sqrt(3))."""
        return 10.0 / (9.0 * np.sqrt(3.0) * self.R ** 4)

    @property
    def L_theta(self) -> float:
        """Lipschitz bound of r -> theta_hat(r^2)."""
        return 2.5 / self.R

    @property
    def support(self) -> float:
        return 2.0 * self.R
