import numpy as np
from core.manifold.distances import reduced_map_distance
from .claim_check import ClaimCheck, monotone_decreasing
from .convergence_metrics import semiflow_distances
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import FLOOR, rate_claims, rows_succeeded

SMOOTHING_SPREAD = 2.0

def reduced_distance_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    system = laboratory.system(epsilon)
    pair = laboratory.manifolds(system)
    distance = reduced_map_distance(pair.reduced, pair.reduced_lifted)
    time_one, smoothing = semiflow_distances(laboratory, system)
    return {
        "epsilon": float(epsilon),
        "reduced_map_dist": distance.c0,
        "reduced_map_dist_c1": distance.c1,
        "map_samples": distance.samples,
        "time_one_dist": time_one,
        "smoothing_lipschitz": smoothing,
    }

class ReducedDistanceExperiment(ExperimentInterface):
    """C0/C1 distance of the reduced time-one maps and the full time-one distance."""

    async def run(self) -> ExperimentResult:
        table = await self.runner().run(reduced_distance_row)
        ok = table[table["status"] == "ok"]
        claims = [rows_succeeded(table)]
        fits = {}

        for column in ("reduced_map_dist", "time_one_dist"):
            fit, column_claims = rate_claims(table, column, 0.8, 1.2, require_log=True)
            claims.extend(column_claims)
            if fit:
                fits[column] = fit

        if not ok.empty:
            c1 = ok["reduced_map_dist_c1"].tolist()
            if max(c1) <= FLOOR:
                claims.append(ClaimCheck("C1 reduced-map distance at numerical floor", True, ", ".join(f"{value:.3g}" for value in c1)))
            else:
                claims.append(monotone_decreasing("C1 reduced-map distance decreasing in eps", c1, slack=FLOOR))

            smoothing = ok["smoothing_lipschitz"].to_numpy()
            spread = float(np.max(smoothing) / np.min(smoothing)) if np.min(smoothing) > 0 else float("inf")
            claims.append(ClaimCheck(f"smoothing constants vary at most {SMOOTHING_SPREAD:g}x across eps", spread <= SMOOTHING_SPREAD, f"max/min = {spread:.4g}"))

        result = ExperimentResult(ExperimentType.REDUCED_DISTANCE, table, fits, claims)
        self.log_summary(result)
        return result
