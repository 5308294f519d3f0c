import asyncio, logging
from typing import Callable, Dict, List, Optional, Sequence
import pandas as pd
from tabulate import tabulate
from config.experiment_config import ExperimentConfig
from .convergence_metrics import CONVERGENCE_COLUMNS, measure_convergence
from .exceptions import EmptySweepError
from .laboratory import ChannelLaboratory

RowFn = Callable[[ChannelLaboratory, float], dict]

class SweepRunner:
    """
    Runs one row function per epsilon as worker threads, at most `threads` at a time.
    A failing row is recorded with status "failed" and the error text; the others go on.
    Rows are returned in the order of the epsilon list.
    """
    def __init__(self, laboratory: ChannelLaboratory, threads: Optional[int] = None):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.laboratory = laboratory
        self.threads = threads or laboratory.config.threads
        self.errors: Dict[float, Exception] = {}

    def _run_row(self, row_fn: RowFn, epsilon: float) -> dict:
        try:
            row = row_fn(self.laboratory, epsilon)
            row.setdefault("status", "ok")
            row.setdefault("reason", "")
            return row

        except Exception as e:
            self.errors[epsilon] = e
            self.logger.error(f"eps={epsilon:.6g}: row aborted by {type(e).__name__}: {e}")
            return {"epsilon": float(epsilon), "status": "failed", "reason": f"{type(e).__name__}: {e}"}

    async def run(self, row_fn: RowFn, eps_list: Optional[Sequence[float]] = None, columns: Optional[List[str]] = None) -> pd.DataFrame:
        eps_list = list(self.laboratory.config.eps_list if eps_list is None else eps_list)
        if not eps_list:
            raise EmptySweepError()

        await asyncio.to_thread(self.laboratory.warm_up)
        semaphore = asyncio.Semaphore(self.threads)

        async def gated(epsilon: float) -> dict:
            async with semaphore:
                return await asyncio.to_thread(self._run_row, row_fn, epsilon)

        rows = await asyncio.gather(*(gated(epsilon) for epsilon in eps_list))
        order = {epsilon: index for index, epsilon in enumerate(eps_list)}
        rows = sorted(rows, key=lambda row: order[row["epsilon"]])

        table = pd.DataFrame(rows)
        if columns is not None:
            table = table.reindex(columns=columns)
        else:
            leading = ["epsilon", "status", "reason"]
            table = table[leading + [column for column in table.columns if column not in leading]]

        failed = int((table["status"] != "ok").sum())
        self.logger.info(f"Sweep over {len(eps_list)} eps values finished, {failed} failed rows")
        return table

    @staticmethod
    def summary(table: pd.DataFrame, columns: Optional[List[str]] = None) -> str:
        shown = table if columns is None else table[[column for column in columns if column in table.columns]]
        return tabulate(shown.values.tolist(), headers=list(shown.columns), tablefmt="pipe", floatfmt=".4g")

def convergence_row(laboratory: ChannelLaboratory, epsilon: float) -> dict:
    return measure_convergence(laboratory, epsilon).as_row()

async def run_sweep(config: ExperimentConfig, laboratory: Optional[ChannelLaboratory] = None) -> pd.DataFrame:
    """ConvergenceMetrics table, one row per epsilon in the configured order."""
    if not config.eps_list:
        raise EmptySweepError()
    runner = SweepRunner(laboratory or ChannelLaboratory(config), config.threads)
    return await runner.run(convergence_row, config.eps_list, CONVERGENCE_COLUMNS)
