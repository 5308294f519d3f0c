import numpy as np
from core.manifold.gap_report import gap_growth_check
from core.operators.discrete_operator import assemble_Aeps
from core.operators.measurements import poincare_defect, projection_distance
from .claim_check import ClaimCheck, at_most, monotone_decreasing
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rate_claims, rows_succeeded

RANDOM_FIELDS = 100
NORM_PROBES = 10
IDENTITY_TOLERANCE = 1e-12

def norm_probes(laboratory: ChannelLaboratory):
    x = laboratory.limit.operator.x_nodes
    return [np.cos(k * np.pi * x) for k in range(NORM_PROBES)]

def spectrum_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    system = laboratory.system(epsilon)
    limit = laboratory.limit
    count = min(system.galerkin.count, limit.galerkin.count)
    relative = np.abs(system.basis.values[:count] - limit.basis.values[:count]) / limit.basis.values[:count]

    gaps = [
        abs(system.basis.alpha_norm(laboratory.transfer.extend(probe)) - limit.basis.alpha_norm(probe))
        for probe in norm_probes(laboratory)
    ]
    row = {
        "epsilon": float(epsilon),
        "lambda_1": float(system.basis.values[0]),
        "eigenvalue_rel_diff": float(np.max(relative)),
        "projection_dist": projection_distance(system.basis, limit.basis, laboratory.transfer, laboratory.m, laboratory.probes()),
        "alpha_norm_gap": float(max(gaps)),
    }
    row.update({f"alpha_norm_gap_{k}": float(gap) for k, gap in enumerate(gaps)})
    return row

class SpectrumExperiment(ExperimentInterface):
    """Eigenvalues, spectral projections, transfer identities and the cross-section Poincare bound."""

    def _transfer_claims(self):
        laboratory = self.laboratory
        transfer, grid = laboratory.transfer, laboratory.grid
        rng = np.random.default_rng(self.config.seed)
        mass_eps = assemble_Aeps(grid, laboratory.operator_config(self.config.eps_list[0])).mass
        limit_op = laboratory.limit.operator

        limit_fields = [rng.standard_normal(grid.nx) for _ in range(NORM_PROBES)]
        average_error = max(float(np.max(np.abs(transfer.average(transfer.extend(u)) - u))) for u in limit_fields)
        isometry_error = max(
            abs(np.sqrt(float(transfer.extend(u) @ (mass_eps @ transfer.extend(u)))) - limit_op.l2_norm(u)) / limit_op.l2_norm(u)
            for u in limit_fields
        )

        defects = [poincare_defect(rng.standard_normal(grid.size), transfer, grid) for _ in range(RANDOM_FIELDS)]
        worst = max(defect - bound for defect, bound in defects)
        constant_defect = max(poincare_defect(transfer.extend(u), transfer, grid)[0] for u in limit_fields)

        return [
            at_most("M E = I", average_error, IDENTITY_TOLERANCE),
            at_most("||E u||_L2(Q) = ||u||_L2_g (relative)", isometry_error, IDENTITY_TOLERANCE),
            at_most(f"Poincare defect <= beta ||grad_y u||^2 on {RANDOM_FIELDS} random fields", worst, 1e-12),
            at_most("Poincare defect of transverse-constant fields", constant_defect, 1e-20),
        ]

    async def run(self) -> ExperimentResult:
        table = await self.runner().run(spectrum_row)
        ok = table[table["status"] == "ok"]
        claims = [rows_succeeded(table)]

        fit, projection_claims = rate_claims(table, "projection_dist", 0.8, 1.2, floor=1e-8)
        claims.extend(projection_claims)

        for k in range(NORM_PROBES):
            column = f"alpha_norm_gap_{k}"
            if column in ok:
                claims.append(monotone_decreasing(f"||E u_{k}||_X_eps^alpha -> ||u_{k}||_X_0^alpha", ok[column].tolist(), slack=1e-12))

        claims.extend(self._transfer_claims())

        growth = gap_growth_check(self.laboratory.limit.basis)
        claims.append(ClaimCheck("limit eigenvalue gaps grow linearly", growth.satisfied, f"N0={growth.N0}, offset={growth.offset}, slope={growth.slope:.4g}"))

        result = ExperimentResult(
            ExperimentType.SPECTRUM,
            table,
            {"projection_dist": fit} if fit else {},
            claims,
            {"limit_eigenvalues": self.laboratory.limit.galerkin.values.tolist(), "m": self.laboratory.m}
        )
        self.log_summary(result, ["epsilon", "status", "lambda_1", "eigenvalue_rel_diff", "projection_dist", "alpha_norm_gap"])
        return result
