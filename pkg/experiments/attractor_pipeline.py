import asyncio
from typing import Dict, List, Tuple
import pandas as pd
from core.semiflow.exceptions import HypothesisViolationError, SupNormViolationError
from .attractor_distance_experiment import RESCALE_TOLERANCE, rescale_defect
from .claim_check import ClaimCheck, at_most
from .convergence_metrics import CONVERGENCE_COLUMNS
from .exceptions import HypothesisAbortError
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .rate_checks import rate_claims, rows_succeeded
from .rate_fit import RateFit
from .sweep_runner import convergence_row

# (column, exponent range, log-corrected model required)
RATE_TARGETS = [
    ("tau", (0.85, 1.15), False),
    ("graph_dist", (0.8, 1.2), True),
    ("reduced_map_dist", (0.8, 1.2), True),
    ("time_one_dist", (0.8, 1.2), True),
    ("attractor_dist_reduced", (0.8, 1.2), True),
    ("attractor_dist_H1Q", (0.8, 1.2), True),
]

# F_eps(E u) = E F_0^eps(u) is exact; beta carries the finite-difference noise
RHO_TOLERANCE = 1e-12
BETA_TOLERANCE = 1e-6

def chain_ratio(table: pd.DataFrame) -> pd.Series:
    """dist in H^1_eps(Q) over the reduced-space distance; nan where the latter vanishes."""
    reduced = table["attractor_dist_reduced"].where(table["attractor_dist_reduced"] > 0)
    return table["attractor_dist_H1Q"] / reduced

def pipeline_claims(table: pd.DataFrame, d: int) -> Tuple[Dict[str, RateFit], List[ClaimCheck]]:
    """Rate claims of every intermediate distance, the lifted-pair closeness and the final H1(Q_eps) rate."""
    ok = table[table["status"] == "ok"]
    claims = [rows_succeeded(table)]
    fits = {}

    for column, (lower, upper), require_log in RATE_TARGETS:
        fit, column_claims = rate_claims(table, column, lower, upper, require_log)
        claims.extend(column_claims)
        if fit:
            fits[column] = fit

    if not ok.empty:
        claims.append(at_most("rho of the lifted nonlinearity pair", float(ok["rho"].max()), RHO_TOLERANCE))
        claims.append(at_most("beta of the lifted nonlinearity pair", float(ok["beta"].max()), BETA_TOLERANCE))

    target = (d + 1) / 2
    final_fit, final_claims = rate_claims(table, "attractor_dist_H1Qeps", target - 0.2, target + 0.2, require_log=True)
    if final_fit:
        fits["attractor_dist_H1Qeps"] = final_fit
    claims.extend(final_claims)

    claims.append(at_most("rescaling eps^((d-1)/2) exact on every row (relative)", rescale_defect(table, d), RESCALE_TOLERANCE))
    if not ok.empty:
        claims.append(ClaimCheck("reduced attractor bound holds on every row", bool(ok["bound_holds"].astype(bool).all()), ", ".join(f"{value:.3e}" for value in ok["bound_margin"])))
    return fits, claims

class AttractorPipeline(ExperimentInterface):
    """
    端到端收敛流程 (end-to-end attractor convergence).

    Checks hyperbolicity of the limit attractor, runs the full sweep, reports the reduced-space
    chain next to the full distance and fits the final rate of dist_H1(Q_eps)(A_0, A_eps),
    whose exponent should be (d + 1) / 2 with a logarithmic correction.
    """

    def _check_limit(self):
        try:
            attractor = self.laboratory.limit_attractor
        except (HypothesisViolationError, SupNormViolationError) as e:
            raise HypothesisAbortError(None, e.message) from e
        self.logger.info(f"Limit attractor: {attractor.equilibria.count} hyperbolic equilibria, {len(attractor.connections)} connections")

    async def run(self) -> ExperimentResult:
        await asyncio.to_thread(self._check_limit)

        runner = self.runner()
        table = await runner.run(convergence_row, self.config.eps_list, CONVERGENCE_COLUMNS)
        for epsilon, error in runner.errors.items():
            if isinstance(error, (HypothesisViolationError, SupNormViolationError)):
                raise HypothesisAbortError(epsilon, error.message) from error

        table["chain_ratio"] = chain_ratio(table)
        ok = table[table["status"] == "ok"]
        d = self.laboratory.profile.d
        fits, claims = pipeline_claims(table, d)
        target = (d + 1) / 2

        ratios = ok["chain_ratio"].dropna()
        metadata = {
            "target_exponent": target,
            "chain_ratio_max": float(ratios.max()) if not ratios.empty else float("nan"),
            "m": self.laboratory.m,
        }
        result = ExperimentResult(ExperimentType.PIPELINE, table, fits, claims, metadata)
        self.log_summary(result, ["epsilon", "status", "tau", "graph_dist", "reduced_map_dist", "attractor_dist_reduced", "attractor_dist_H1Q", "attractor_dist_H1Qeps", "chain_ratio", "bound_holds"])
        return result
