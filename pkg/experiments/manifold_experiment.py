import asyncio
import numpy as np
import pandas as pd
from core.manifold.distances import graph_distance
from core.manifold.gap_report import GapReport
from core.manifold.graph_fn import GraphFn
from core.manifold.graph_transform import invariance_defect
from core.semiflow.equilibria import find_equilibria
from core.semiflow.stepper import Stepper
from .claim_check import ClaimCheck, at_most
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rate_claims, rows_succeeded

MEMBERSHIP_TOLERANCE = 1e-4
SUBSTITUTION_TOLERANCE = 1e-12

def membership(laboratory: ChannelLaboratory, graph: GraphFn, stepper: Stepper) -> float:
    """Largest distance of a computed equilibrium to the graph."""
    equilibria = find_equilibria(laboratory.seeds(stepper.basis.operator.size), stepper)
    return max((graph.membership_defect(c) for c in equilibria.coefficients), default=0.0)

def graph_row(laboratory: ChannelLaboratory, graph: GraphFn, stepper: Stepper) -> dict:
    return {
        "lipschitz": graph.lipschitz_est,
        "iterations": graph.iterations,
        "invariance_defect": invariance_defect(graph, stepper),
        "equilibrium_membership": membership(laboratory, graph, stepper),
    }

def manifold_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    system = laboratory.system(epsilon)
    pair = laboratory.manifolds(system)
    row = {"epsilon": float(epsilon), "graph_dist": graph_distance(pair.graph, pair.graph_lifted, laboratory.transfer, norm_basis=system.basis)}
    row.update(graph_row(laboratory, pair.graph, system.stepper))
    row["lipschitz_lifted"] = pair.graph_lifted.lipschitz_est
    return row

def substituted(report: GapReport, values: np.ndarray, L_F: float, kappa: float, alpha: float) -> bool:
    """Recomputes both gap inequalities from the eigenvalues and compares with the report."""
    lower, upper = float(values[report.m - 1]), float(values[report.m])
    gap_ok = upper - lower >= 3.0 * (kappa + 2.0) * L_F * (lower ** alpha + upper ** alpha) * (1.0 - SUBSTITUTION_TOLERANCE)
    power_ok = lower ** (1.0 - alpha) >= 6.0 * (kappa + 2.0) * L_F / (1.0 - alpha) * (1.0 - SUBSTITUTION_TOLERANCE)
    return (gap_ok and power_ok) == report.satisfied

class ManifoldExperiment(ExperimentInterface):
    """Gap report, graph transform convergence, invariance and graph distance across eps."""

    def _limit_row(self) -> dict:
        laboratory = self.laboratory
        row = {"epsilon": 0.0, "status": "ok", "reason": "", "graph_dist": 0.0}
        row.update(graph_row(laboratory, laboratory.limit_graph, laboratory.limit.stepper))
        return row

    async def run(self) -> ExperimentResult:
        laboratory = self.laboratory
        limit_row = await asyncio.to_thread(self._limit_row)
        thin = await self.runner().run(manifold_row)
        table = pd.concat([pd.DataFrame([limit_row]), thin], ignore_index=True)
        ok = table[table["status"] == "ok"]

        report = laboratory.gap_report
        claims = [rows_succeeded(thin)]
        claims.append(ClaimCheck(
            f"gap report for m={report.m} agrees with substitution",
            substituted(report, laboratory.limit.basis.values, laboratory.gap_L_F, laboratory.transfer.kappa, self.config.alpha),
            f"gap {report.gap:.6g} vs {report.gap_threshold:.6g}, lambda_m^(1-alpha) {report.eigen_power:.6g} vs {report.eigen_threshold:.6g}, satisfied={report.satisfied}"
        ))
        claims.append(ClaimCheck("graph Lipschitz constants below 1", bool((ok["lipschitz"] < 1.0).all()), ", ".join(f"{value:.4g}" for value in ok["lipschitz"])))
        claims.append(at_most("equilibria lie on the graph", float(ok["equilibrium_membership"].max()), MEMBERSHIP_TOLERANCE))

        fit, distance_claims = rate_claims(thin, "graph_dist", 0.8, 1.2, require_log=True)
        claims.extend(distance_claims)

        result = ExperimentResult(ExperimentType.MANIFOLD, table, {"graph_dist": fit} if fit else {}, claims, {"m": report.m, "gap_satisfied": report.satisfied})
        self.log_summary(result)
        return result
