import asyncio
import numpy as np
from core.shadowing.pseudo_trajectory import perturbed_orbits
from core.shadowing.shadow_solver import STABILITY_VARIATION, ShadowingContext, ShadowingEstimate, finite_difference_jacobian, lipschitz_shadowing_estimate, window_sensitivity
from .claim_check import ClaimCheck, at_most, in_range
from .convergence_metrics import shadowing_bound, shadowing_estimate
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rows_succeeded

ORACLE_RANGE = (1.0, 2.1)
WINDOW_TOLERANCE = STABILITY_VARIATION

def contraction_oracle(window: int, deltas, samples_per_delta: int, seed: int) -> ShadowingEstimate:
    """L-hat of T(x) = x / 2 around its fixed point 0, where the exact constant is below 2."""
    T = lambda z: 0.5 * np.asarray(z, dtype=float)
    samples = perturbed_orbits(T, np.zeros(1), window, deltas, samples_per_delta, seed)
    return lipschitz_shadowing_estimate(T, finite_difference_jacobian(T), samples, ShadowingContext(np.zeros((1, 1))))

def shadowing_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    system = laboratory.system(epsilon)
    pair = laboratory.manifolds(system)
    outcome = shadowing_bound(laboratory, pair)
    estimate, report = outcome.estimate, outcome.report
    doubled = shadowing_estimate(laboratory, pair, outcome.attractor_lifted, 2 * laboratory.config.window)
    return {
        "epsilon": float(epsilon),
        "L_hat": estimate.L_hat,
        "L_hat_2N": doubled.L_hat,
        "window_sensitivity": window_sensitivity(estimate, doubled),
        "shadowing_variation": estimate.variation,
        "stable": estimate.stable,
        "samples": estimate.samples,
        "attractor_dist_reduced": report.hausdorff,
        "map_distance": report.map_distance,
        "sampling_tolerance": report.sampling_tolerance,
        "bound": report.bound,
        "bound_margin": report.margin,
        "bound_holds": report.holds,
    }

class ShadowingExperiment(ExperimentInterface):
    """
    Lipschitz shadowing constant of the lifted-limit reduced map and the attractor bound
    dist_H <= L * ||T0_eps - T_eps|| + sampling tolerance at every eps. Every estimate is
    repeated with a doubled window.
    """

    async def run(self) -> ExperimentResult:
        config = self.config
        oracle = await asyncio.to_thread(contraction_oracle, config.window, config.deltas, config.samples_per_delta, config.seed)
        oracle_doubled = await asyncio.to_thread(contraction_oracle, 2 * config.window, config.deltas, config.samples_per_delta, config.seed)
        table = await self.runner().run(shadowing_row)
        ok = table[table["status"] == "ok"]

        claims = [
            in_range("contraction oracle L-hat for T(x) = x/2", oracle.L_hat, *ORACLE_RANGE),
            at_most(f"contraction oracle insensitive to N={config.window} -> {2 * config.window}", window_sensitivity(oracle, oracle_doubled), WINDOW_TOLERANCE),
            rows_succeeded(table)
        ]
        if not ok.empty:
            claims.append(ClaimCheck("L-hat stable within 50% across delta decades", bool(ok["stable"].all()), ", ".join(f"{value:.2%}" for value in ok["shadowing_variation"])))
            claims.append(at_most(f"L-hat insensitive to N={config.window} -> {2 * config.window}", float(ok["window_sensitivity"].max()), WINDOW_TOLERANCE))
            claims.append(ClaimCheck("attractor bound holds at every eps", bool(ok["bound_holds"].all()), ", ".join(f"{value:.3e}" for value in ok["bound_margin"])))

        metadata = {"oracle_L_hat": oracle.L_hat, "oracle_L_hat_2N": oracle_doubled.L_hat, "oracle_by_decade": oracle.by_decade}
        result = ExperimentResult(ExperimentType.SHADOWING, table, {}, claims, metadata)
        self.log_summary(result)
        return result
