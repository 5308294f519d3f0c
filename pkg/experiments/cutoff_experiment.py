import asyncio
from dataclasses import dataclass
from typing import List, Tuple
import numpy as np
from core.nonlinearity.estimators import LipschitzRecord, holder_exponent_target, lipschitz_estimator
from core.nonlinearity.nonlinear_operator import GateRegionReport, commutation_check, gate_region_report, rescale_to_gate
from .claim_check import ClaimCheck, at_most
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rows_succeeded

COMMUTATION_FIELDS = 50
REGION_FIELDS = 8
SAMPLE_PAIRS = 100
HOLDER_RAYS = 8
COSINE_MODES = 6
COMMUTATION_TOLERANCE = 1e-12
HOLDER_SLACK = 0.1

def random_fields(x: np.ndarray, count: int, rng: np.random.Generator) -> List[np.ndarray]:
    """Smooth random fields sum_k c_k cos(k pi x) with c_k ~ N(0, 1) / (1 + k)^2."""
    k = np.arange(COSINE_MODES)
    modes = np.cos(np.pi * np.outer(k, x))
    coefficients = rng.standard_normal((count, COSINE_MODES)) / (1.0 + k) ** 2
    return list(coefficients @ modes)

def sample_pairs(laboratory: ChannelLaboratory, rng: np.random.Generator) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    Pairs with gate norms drawn from [0, 2.5R], covering the inner ball, the transition shell
    and the region past the support. The first pairs, which seed the Holder rays, sit in
    [0.2R, 1.8R] where DF does not vanish.
    """
    op = laboratory.limit.nonlinear
    x, R = op.x_nodes, op.cutoff.R
    pairs = []
    for index in range(SAMPLE_PAIRS):
        lower, upper = (0.2, 1.8) if index < HOLDER_RAYS else (0.0, 2.5)
        u, w = random_fields(x, 2, rng)
        pairs.append((rescale_to_gate(u, op, rng.uniform(lower, upper) * R), rescale_to_gate(w, op, rng.uniform(lower, upper) * R)))
    return pairs

def cutoff_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    system = laboratory.system(epsilon)
    transfer, R = laboratory.transfer, laboratory.cutoff.R
    rng = np.random.default_rng(laboratory.config.seed)
    fields = random_fields(laboratory.limit.operator.x_nodes, COMMUTATION_FIELDS, rng)

    scaled = [rescale_to_gate(u, system.nonlinear_lifted, rng.uniform(0.0, 2.5) * R) for u in fields]
    commutation = max(commutation_check(u, transfer, system.nonlinear, system.nonlinear_lifted) for u in scaled)
    regions = gate_region_report([transfer.extend(u) for u in fields[:REGION_FIELDS]], system.nonlinear)
    return {
        "epsilon": float(epsilon),
        "commutation_max": commutation,
        "agreement_defect": regions.agreement_defect,
        "support_max": regions.support_max,
        "transition_min": regions.transition_min,
        "transition_max": regions.transition_max,
        "regions_exact": regions.exact,
    }

@dataclass(frozen=True)
class LimitCutoffChecks:
    regions: GateRegionReport
    record: LipschitzRecord
    holder_target: float

def limit_cutoff_checks(laboratory: ChannelLaboratory) -> LimitCutoffChecks:
    op = laboratory.limit.nonlinear
    rng = np.random.default_rng(laboratory.config.seed + 1)
    regions = gate_region_report(random_fields(op.x_nodes, REGION_FIELDS, rng), op)
    record = lipschitz_estimator(op, sample_pairs(laboratory, rng))
    return LimitCutoffChecks(regions, record, holder_exponent_target(laboratory.config.alpha, laboratory.profile.d))

def holder_claim(record: LipschitzRecord, target: float) -> ClaimCheck:
    lower = target - HOLDER_SLACK
    passed = bool(np.isfinite(record.theta_F) and record.theta_F >= lower)
    return ClaimCheck("Holder exponent of DF", passed, f"{record.theta_F:.4g} >= {lower:.4g}")

class CutoffExperiment(ExperimentInterface):
    """
    截断函数检查 (cut-off suite).

    Support and agreement regions of the prepared nonlinearities, the exact commutation of
    the thin-channel and lifted-limit nonlinearities with E on random fields, the empirical
    Lipschitz constant against the analytic bound and the Holder exponent of DF.
    """

    async def run(self) -> ExperimentResult:
        limit = await asyncio.to_thread(limit_cutoff_checks, self.laboratory)
        table = await self.runner().run(cutoff_row)
        ok = table[table["status"] == "ok"]
        record = limit.record

        claims = [
            rows_succeeded(table),
            ClaimCheck("support and agreement regions exact on the limit", limit.regions.exact, f"agreement {limit.regions.agreement_defect:.3e}, support {limit.regions.support_max:.3e}"),
            at_most(f"empirical L_F below the analytic bound ({record.pairs_used} pairs)", record.L_F, record.analytic_bound),
            holder_claim(record, limit.holder_target),
        ]
        if not ok.empty:
            claims.append(at_most(f"F_eps(E u) = E F_0^eps(u) on {COMMUTATION_FIELDS} random fields", float(ok["commutation_max"].max()), COMMUTATION_TOLERANCE))
            claims.append(ClaimCheck("support and agreement regions exact on every channel", bool(ok["regions_exact"].astype(bool).all()), ", ".join(f"{value:.3e}" for value in ok["agreement_defect"])))

        metadata = {"L_F": record.L_F, "L_F_bound": record.analytic_bound, "theta_F": record.theta_F, "theta_F_target": limit.holder_target}
        result = ExperimentResult(ExperimentType.CUTOFF, table, {}, claims, metadata)
        self.log_summary(result)
        return result
