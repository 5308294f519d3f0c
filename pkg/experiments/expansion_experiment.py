import asyncio
import numpy as np
import pandas as pd
from core.expansion.cell_problem import compatibility_check, expansion_terms, solve_cell_V2
from core.expansion.closed_form_field import cosine_forcing, solve_limit_field
from core.expansion.optimality import FLOOR_DISTANCE, OptimalityTable, odd_terms_vanish, optimality_ratio
from core.operators.discrete_operator import assemble_A0
from .claim_check import ClaimCheck, at_most
from .experiment_interface import ExperimentInterface
from .experiment_result import ExperimentResult
from .experiment_type import ExperimentType

RELATIVE_DEVIATION_LIMIT = 0.1
CELL_TOLERANCE = 1e-10
COMPATIBILITY_LIMIT = 1e-8
CELL_POINTS = (0.25, 0.5, 0.75)

class ExpansionExperiment(ExperimentInterface):
    """
    Optimality of the first-order rate: ||u_eps - E v_0|| / eps against ||grad_y V_2||, with
    the cross-section cell problem checked against its closed form.
    """

    def _optimality(self) -> OptimalityTable:
        config, laboratory = self.config, self.laboratory
        return optimality_ratio(laboratory.profile, laboratory.operator_config(), cosine_forcing(1), config.eps_list, config.nx, config.nz, config.n1d)

    def _cell_claims(self):
        config, profile = self.config, self.laboratory.profile
        forcing = cosine_forcing(1)
        field = solve_limit_field(assemble_A0(profile, self.laboratory.operator_config(), config.n1d), forcing)

        terms = expansion_terms(profile, field, forcing, config.mu)
        claims = [at_most("limit equation residual of v_0", compatibility_check(profile, field, forcing, config.mu), COMPATIBILITY_LIMIT)]
        for point in CELL_POINTS:
            x = float(field.nodes[np.argmin(np.abs(field.nodes - point))])
            solution = solve_cell_V2(profile, field, forcing, x, config.mu)
            deviation = float(np.max(np.abs(solution.values - terms.V2(x, solution.y))))
            claims.append(at_most(f"cell problem V_2 at x={x:.4f} matches closed form", deviation, CELL_TOLERANCE))
        return claims

    async def run(self) -> ExperimentResult:
        optimality = await asyncio.to_thread(self._optimality)
        table = pd.DataFrame([
            {"epsilon": row.epsilon, "status": "ok", "reason": "", "distance": row.distance, "ratio": row.ratio, "at_floor": row.at_floor, "target": optimality.target}
            for row in optimality.rows
        ])

        if optimality.target == 0:
            floor = max(row.distance for row in optimality.rows)
            claims = [at_most("zero target: u_eps - E v_0 at numerical floor", floor, FLOOR_DISTANCE)]
        else:
            claims = [at_most("ratio -> ||grad_y V_2|| (relative deviation)", optimality.relative_deviation, RELATIVE_DEVIATION_LIMIT)]

        claims.append(ClaimCheck("odd-order terms vanish", odd_terms_vanish(optimality), ", ".join(f"{step:.3g}" for step in optimality.increments)))
        claims.extend(await asyncio.to_thread(self._cell_claims))

        result = ExperimentResult(ExperimentType.EXPANSION, table, {}, claims, {"target": optimality.target})
        self.log_summary(result)
        return result
