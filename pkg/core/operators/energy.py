from dataclasses import dataclass
import numpy as np
from core.geometry.channel_profile import ChannelProfile
from core.geometry.mapped_grid import MappedGrid
from .discrete_operator import DiscreteOperator, assemble_A0, assemble_Aeps, solve_resolvent
from .operator_config import OperatorConfig
from .transfer_operators import TransferOperators, build_transfer

@dataclass(frozen=True)
class EnergyPair:
    lambda_eps: float
    tau_eps: float
    epsilon: float
    d: int

    @property
    def margin(self) -> float:
        """eps^(d-1) tau_eps - lambda_eps; non-negative up to rounding."""
        return self.epsilon ** (self.d - 1) * self.tau_eps - self.lambda_eps

def energy_pair(op_eps: DiscreteOperator, op_0: DiscreteOperator, transfer: TransferOperators, rhs: np.ndarray) -> EnergyPair:
    """
    Minimized quadratic energies 1/2 a(w, w) - (f, w) on the thin channel and on (0, 1).

    At the minimizer w = A^{-1} f the energy equals -1/2 (f, w). Integrals over Q_eps
    carry the factor eps^(d-1) of the reference-domain rescaling.
    """
    epsilon = op_eps.epsilon
    d = op_eps.profile.d
    rhs = np.asarray(rhs, dtype=float)

    w = solve_resolvent(op_eps, rhs)
    lambda_eps = epsilon ** (d - 1) * (-0.5 * float(rhs @ (op_eps.mass @ w)))

    average = transfer.average(rhs)
    v = solve_resolvent(op_0, average)
    tau_eps = -0.5 * float(average @ (op_0.mass @ v))

    return EnergyPair(lambda_eps, tau_eps, epsilon, d)

def energy_functionals(profile: ChannelProfile, config: OperatorConfig, rhs: np.ndarray, grid: MappedGrid) -> EnergyPair:
    op_eps = assemble_Aeps(grid, config)
    op_0 = assemble_A0(profile, config, grid.nx)
    return energy_pair(op_eps, op_0, build_transfer(grid), rhs)
