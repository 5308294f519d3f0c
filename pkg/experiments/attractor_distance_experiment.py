from .claim_check import at_most
from .convergence_metrics import full_attractor_distance
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rate_claims, rows_succeeded

RESCALE_TOLERANCE = 1e-12

def rescale_defect(table, d: int) -> float:
    """max |dist_H1Qeps - eps^((d-1)/2) dist_H1Q| relative to dist_H1Qeps, over successful rows."""
    ok = table[table["status"] == "ok"]
    if ok.empty:
        return 0.0
    expected = ok["epsilon"] ** ((d - 1) / 2) * ok["attractor_dist_H1Q"]
    scale = expected.abs().clip(lower=1e-300)
    return float(((ok["attractor_dist_H1Qeps"] - expected).abs() / scale).max())

def attractor_distance_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    reference, thin = full_attractor_distance(laboratory, laboratory.system(epsilon))
    return {"epsilon": float(epsilon), "attractor_dist_H1Q": reference, "attractor_dist_H1Qeps": thin}

class AttractorDistanceExperiment(ExperimentInterface):
    """Hausdorff distance of the full attractors on the reference channel and on the thin channel."""

    async def run(self) -> ExperimentResult:
        d = self.laboratory.profile.d
        table = await self.runner().run(attractor_distance_row)
        claims = [rows_succeeded(table), at_most("H1(Q_eps) column = eps^((d-1)/2) H1_eps(Q) column (relative)", rescale_defect(table, d), RESCALE_TOLERANCE)]
        fits = {}

        reference_fit, reference_claims = rate_claims(table, "attractor_dist_H1Q", 0.8, 1.2, require_log=True)
        thin_fit, thin_claims = rate_claims(table, "attractor_dist_H1Qeps", (d + 1) / 2 - 0.2, (d + 1) / 2 + 0.2, require_log=True)
        claims.extend(reference_claims + thin_claims)
        for column, fit in (("attractor_dist_H1Q", reference_fit), ("attractor_dist_H1Qeps", thin_fit)):
            if fit:
                fits[column] = fit

        result = ExperimentResult(ExperimentType.ATTRACTOR_DISTANCE, table, fits, claims)
        self.log_summary(result)
        return result
