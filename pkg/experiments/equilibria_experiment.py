import asyncio
import numpy as np
import pandas as pd
from core.nonlinearity.reaction_kind import ReactionKind
from core.semiflow.equilibria import EquilibriumSet, find_equilibria
from core.semiflow.metrics import dissipativity_check, energy_trace
from core.semiflow.stepper import Stepper
from .claim_check import ClaimCheck, at_most
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rows_succeeded

SPECTRAL_MARGIN = 1.0
CONSTANT_TOLERANCE = 1e-6
ENERGY_SLACK = 1e-9
ENERGY_HORIZON = 5.0
ENERGY_START = 0.5

def equilibrium_row(epsilon: float, equilibria: EquilibriumSet) -> dict:
    means = [float(np.mean(point)) for point in equilibria.points]
    return {
        "epsilon": float(epsilon),
        "count": equilibria.count,
        "unstable_dims": " ".join(str(dim) for dim in equilibria.unstable_dims),
        "means": " ".join(f"{mean:.10g}" for mean in means),
        "spectral_margin": float(min(np.min(np.abs(spectrum)) for spectrum in equilibria.spectra)) if equilibria.count else float("nan"),
        "max_residual": float(max(equilibria.residuals, default=0.0)),
        "failed_seeds": len(equilibria.failed_seeds),
    }

def thin_equilibria_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    stepper = laboratory.system(epsilon).stepper
    return equilibrium_row(epsilon, find_equilibria(laboratory.seeds(stepper.basis.operator.size), stepper))

class EquilibriaExperiment(ExperimentInterface):
    """
    平衡点与双曲性检查 (equilibria and hyperbolicity).

    Equilibria of the limit system (row eps = 0) and of every thin system, their unstable
    dimensions and the smallest distance of a linearization eigenvalue to zero.
    """

    def _expected_constants(self):
        config = self.config
        if config.tilt != 0.0 or self.laboratory.reaction.kind != ReactionKind.CUBIC or config.reaction_a <= config.mu:
            return None
        level = float(np.sqrt((config.reaction_a - config.mu) / config.reaction_b))
        return [-level, 0.0, level], [0, 1, 0]

    def _limit_claims(self, equilibria: EquilibriumSet):
        stepper: Stepper = self.laboratory.limit.stepper
        claims = []

        expected = self._expected_constants()
        if expected is not None:
            levels, dims = expected
            means = [float(np.mean(point)) for point in equilibria.points]
            spread = max((float(np.ptp(point)) for point in equilibria.points), default=0.0)
            matched = len(means) == len(levels) and equilibria.unstable_dims == dims
            deviation = max((abs(mean - level) for mean, level in zip(means, levels)), default=float("inf")) if matched else float("inf")
            claims.append(ClaimCheck("constant equilibria with unstable dimensions (0, 1, 0)", matched and deviation <= CONSTANT_TOLERANCE and spread <= CONSTANT_TOLERANCE, f"means {', '.join(f'{mean:.6g}' for mean in means)}, dims {equilibria.unstable_dims}"))

        bounded, worst = dissipativity_check(stepper, seed=self.config.seed)
        claims.append(ClaimCheck("trajectories enter the sup-norm ball of radius M", bounded, f"final sup-norm {worst:.6g}, M={self.laboratory.reaction.M:.6g}"))

        # constant data stay on the constant line, where the discrete energy is an exact Lyapunov function
        c = stepper.coefficients(np.full(stepper.basis.operator.size, ENERGY_START))
        trace = energy_trace(stepper, c, ENERGY_HORIZON, max(1, stepper.steps_per_unit // self.config.samples_per_unit))
        increase = float(np.max(np.diff(trace), initial=0.0)) / max(1.0, float(np.max(np.abs(trace))))
        claims.append(at_most("limit energy non-increasing along a trajectory (relative)", increase, ENERGY_SLACK))
        return claims

    async def run(self) -> ExperimentResult:
        laboratory = self.laboratory
        limit_equilibria = await asyncio.to_thread(lambda: find_equilibria(laboratory.seeds(laboratory.limit.operator.size), laboratory.limit.stepper))
        limit_row = equilibrium_row(0.0, limit_equilibria)
        limit_row.update(status="ok", reason="")

        thin = await self.runner().run(thin_equilibria_row)
        table = pd.concat([pd.DataFrame([limit_row]), thin], ignore_index=True)
        table = table[["epsilon", "status", "reason"] + [column for column in table.columns if column not in ("epsilon", "status", "reason")]]

        ok = table[table["status"] == "ok"]
        claims = [rows_succeeded(thin)]
        claims.append(ClaimCheck(
            f"all equilibria hyperbolic with spectral margin >= {SPECTRAL_MARGIN:g}",
            bool((ok["spectral_margin"] >= SPECTRAL_MARGIN).all()),
            ", ".join(f"{value:.4g}" for value in ok["spectral_margin"])
        ))
        claims.append(ClaimCheck(
            "unstable dimensions match the limit system at every eps",
            bool((ok["unstable_dims"] == limit_row["unstable_dims"]).all()),
            f"limit: ({limit_row['unstable_dims']})"
        ))
        claims.extend(await asyncio.to_thread(self._limit_claims, limit_equilibria))

        result = ExperimentResult(ExperimentType.EQUILIBRIA, table, {}, claims, {"limit_unstable_dims": limit_equilibria.unstable_dims})
        self.log_summary(result)
        return result
