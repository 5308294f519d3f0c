import numpy as np
from core.operators.energy import energy_functionals
from .claim_check import at_most
from .convergence_metrics import resolvent_tau
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType
from .laboratory import ChannelLaboratory
from .rate_checks import rate_claims, rows_succeeded

RANDOM_RHS = 4
ENERGY_TOLERANCE = 1e-12
EQUALITY_TOLERANCE = 1e-8

def resolvent_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    system = laboratory.system(epsilon)
    transfer, config = laboratory.transfer, laboratory.operator_config(epsilon)
    rng = np.random.default_rng(laboratory.config.seed)

    x_only = [transfer.extend(probe) for probe in laboratory.probes()]
    random = [rng.standard_normal(system.operator.size) for _ in range(RANDOM_RHS)]
    margins_x = [energy_functionals(laboratory.profile, config, rhs, laboratory.grid) for rhs in x_only]
    margins_random = [energy_functionals(laboratory.profile, config, rhs, laboratory.grid) for rhs in random]

    scale = max(abs(pair.lambda_eps) for pair in margins_x + margins_random)
    return {
        "epsilon": float(epsilon),
        "tau": resolvent_tau(laboratory, system),
        "energy_margin_min": min(pair.margin for pair in margins_x + margins_random),
        "energy_margin_x_only": max(abs(pair.margin) for pair in margins_x),
        "energy_scale": scale,
    }

class ResolventRateExperiment(ExperimentInterface):
    """tau(eps) from lifted x-only data, plus the quadratic-energy comparison."""

    async def run(self) -> ExperimentResult:
        table = await self.runner().run(resolvent_row)
        ok = table[table["status"] == "ok"]
        claims = [rows_succeeded(table)]

        fit, tau_claims = rate_claims(table, "tau", 0.85, 1.15, floor=1e-8)
        claims.extend(tau_claims)

        if not ok.empty:
            relative = (-ok["energy_margin_min"] / ok["energy_scale"]).max()
            claims.append(at_most("lambda_eps <= eps^(d-1) tau_eps (relative violation)", float(relative), ENERGY_TOLERANCE))
            if self.config.is_straight:
                claims.append(at_most("energy equality for x-only data on a straight channel", float(ok["energy_margin_x_only"].max()), EQUALITY_TOLERANCE))

        result = ExperimentResult(ExperimentType.RESOLVENT_RATE, table, {"tau": fit} if fit else {}, claims)
        self.log_summary(result)
        return result
