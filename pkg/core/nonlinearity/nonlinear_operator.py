import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence
import numpy as np
from core.operators.eigen_basis import EigenBasis
from core.operators.transfer_operators import TransferOperators
from .cutoff import Cutoff
from .exceptions import EmptySampleError, NonlinearityError
from .reaction_term import ReactionTerm, nemytskii

class GateSpace(Enum):
    """
    OWN gates with the X^alpha norm of the operator's own space (F_eps tilde, F_0 tilde);
    LIFTED gates a limit field u with ||E u|| in the thin-channel X^alpha norm (F_0^eps tilde).
    """
    OWN = "own"
    LIFTED = "lifted"

    @staticmethod
    def from_string(gate_space_str: str):
        try:
            return GateSpace(gate_space_str)
        except ValueError:
            raise ValueError(f"Invalid gate space: '{gate_space_str}'. Available gate spaces are: {', '.join([space.value for space in GateSpace])}")

class NonlinearOperator:
    """
    Prepared nonlinearity u -> Theta(||u||_gate^2) f(u).

    `gate_basis` is the basis whose X^alpha norm gates the cut-off: the operator's own
    basis for OWN, the thin-channel basis for LIFTED (with `transfer` supplying E).
    """
    def __init__(
        self,
        reaction: ReactionTerm,
        cutoff: Cutoff,
        gate_basis: EigenBasis,
        x_nodes: np.ndarray,
        space: GateSpace = GateSpace.OWN,
        transfer: Optional[TransferOperators] = None
    ):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.reaction = reaction
        self.cutoff = cutoff
        self.gate_basis = gate_basis
        self.x_nodes = np.asarray(x_nodes, dtype=float)
        self.space = space
        self.transfer = transfer
        self.measured: Dict[str, float] = {}
        self._lift_cache: Dict[int, np.ndarray] = {}

        if space == GateSpace.LIFTED and transfer is None:
            raise NonlinearityError("A lifted gate needs the transfer operators")

    @property
    def size(self) -> int:
        return len(self.x_nodes)

    def _gate_field(self, u: np.ndarray) -> np.ndarray:
        return self.transfer.extend(u) if self.space == GateSpace.LIFTED else u

    def gate_norm(self, u: np.ndarray, basis: Optional[EigenBasis] = None) -> float:
        return (basis or self.gate_basis).alpha_norm(self._gate_field(u), strict=True)

    def gate_inner(self, u: np.ndarray, v: np.ndarray) -> float:
        """X^alpha inner product of the gate space, (u, v)_alpha."""
        basis = self.gate_basis
        weights = basis.alpha_weights ** 2
        cu = basis.coefficients(self._gate_field(u))
        cv = basis.coefficients(self._gate_field(v))
        return float(np.sum(weights * cu * cv))

    def nemytskii(self, u: np.ndarray) -> np.ndarray:
        return nemytskii(u, self.reaction, self.x_nodes)

    def apply(self, u: np.ndarray, basis: Optional[EigenBasis] = None) -> np.ndarray:
        theta = self.cutoff.theta(self.gate_norm(u, basis))
        if theta == 0.0:
            return np.zeros_like(u, dtype=float)
        return theta * self.nemytskii(u)

    def derivative(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """DF(u)v = Theta f'(u) v + f(u) theta_hat'(||u||^2) 2 (u, v)_alpha."""
        squared = self.gate_norm(u) ** 2
        theta = float(self.cutoff.theta_hat(squared))
        slope = float(self.cutoff.theta_hat_prime(squared))
        result = theta * self.reaction.f_prime(u, self.x_nodes) * v
        if slope != 0.0:
            result = result + self.nemytskii(u) * slope * 2.0 * self.gate_inner(u, v)
        return result

    def _lifted_coefficients(self, basis: EigenBasis) -> np.ndarray:
        """Coefficients of E phi_j in the gate basis, one column per mode of `basis`."""
        key = id(basis.vectors)
        if key not in self._lift_cache:
            self._lift_cache[key] = self.gate_basis.coefficients(self.transfer.extend(basis.vectors))
        return self._lift_cache[key]

    def gate_coefficients(self, c: np.ndarray, basis: EigenBasis) -> np.ndarray:
        """Gate-basis coefficients of the field with `basis` coefficients c."""
        if self.space == GateSpace.LIFTED:
            return self._lifted_coefficients(basis) @ c
        return c

    def gate_norm_from_coefficients(self, c: np.ndarray, basis: EigenBasis) -> float:
        """
        Gate norm of sum c_j phi_j for a Galerkin basis whose modes lead the gate basis
        (OWN) or lift into it (LIFTED).
        """
        return float(self.gate_basis.coefficient_alpha_norm(self.gate_coefficients(c, basis)))

    def gate_gradient_from_coefficients(self, c: np.ndarray, basis: EigenBasis) -> np.ndarray:
        """Gradient in c of ||u||_gate^2."""
        if self.space == GateSpace.LIFTED:
            lift = self._lifted_coefficients(basis)
            weights = self.gate_basis.alpha_weights[:lift.shape[0]] ** 2
            return 2.0 * lift.T @ (weights * (lift @ c))
        return 2.0 * basis.alpha_weights[:len(c)] ** 2 * c

def apply_cutoff_F(u: np.ndarray, op: NonlinearOperator, basis: Optional[EigenBasis] = None) -> np.ndarray:
    """Theta(||u||_gate^2) f(u); `basis` overrides the operator's gate basis."""
    return op.apply(u, basis)

def commutation_check(u0: np.ndarray, transfer: TransferOperators, op_eps: NonlinearOperator, op_0eps: NonlinearOperator) -> float:
    """||F_eps(E u0) - E F_0^eps(u0)|| in L2(Q)."""
    lifted = transfer.extend(u0)
    difference = op_eps.apply(lifted) - transfer.extend(op_0eps.apply(u0))
    return op_eps.gate_basis.operator.l2_norm(difference)

AGREEMENT_SCALES = (0.0, 0.25, 0.5, 0.9, 1.0)
SUPPORT_SCALES = (2.0 * (1.0 + 1e-9), 2.5, 4.0)
TRANSITION_SCALE = 1.5

@dataclass(frozen=True)
class GateRegionReport:
    """
    Behaviour of apply_cutoff_F on fields rescaled to fixed multiples of R: the largest
    deviation from the Nemytskii value inside the ball of radius R, the largest output beyond
    2R, and the range of the damping factor at 1.5R.
    """
    agreement_defect: float
    support_max: float
    transition_min: float
    transition_max: float

    @property
    def exact(self) -> bool:
        return self.agreement_defect == 0.0 and self.support_max == 0.0 and 0.0 < self.transition_min <= self.transition_max < 1.0

def rescale_to_gate(u: np.ndarray, op: NonlinearOperator, norm: float) -> np.ndarray:
    size = op.gate_norm(u)
    if size == 0.0:
        raise NonlinearityError("Cannot rescale a field with zero gate norm")
    return u * (norm / size)

def gate_region_report(fields: Sequence[np.ndarray], op: NonlinearOperator) -> GateRegionReport:
    if not fields:
        raise EmptySampleError("field list")

    R = op.cutoff.R
    agreement, support, factors = 0.0, 0.0, []
    for u in fields:
        for scale in AGREEMENT_SCALES:
            v = rescale_to_gate(u, op, scale * R) if scale > 0 else np.zeros_like(u, dtype=float)
            agreement = max(agreement, float(np.max(np.abs(apply_cutoff_F(v, op) - op.nemytskii(v)))))
        for scale in SUPPORT_SCALES:
            support = max(support, float(np.max(np.abs(apply_cutoff_F(rescale_to_gate(u, op, scale * R), op)))))

        v = rescale_to_gate(u, op, TRANSITION_SCALE * R)
        plain = op.nemytskii(v)
        node = int(np.argmax(np.abs(plain)))
        if plain[node] != 0.0:
            factors.append(float(apply_cutoff_F(v, op)[node] / plain[node]))

    report = GateRegionReport(agreement, support, min(factors, default=float("nan")), max(factors, default=float("nan")))
    op.logger.debug(f"Gate regions over {len(fields)} fields: agreement {agreement:.3e}, support {support:.3e}")
    return report
