import logging
from abc import ABC, abstractmethod
from typing import Optional
from config.experiment_config import ExperimentConfig
from .claim_check import log_claims
from .experiment_result import ExperimentResult
from .laboratory import ChannelLaboratory
from .sweep_runner import SweepRunner

class ExperimentInterface(ABC):
    """
    Abstract base class for all experiments.
    Each concrete experiment isolates one claim family and produces an ExperimentResult.

    所有实验的抽象基类。
    每个具体实验验证一组结论，并生成 ExperimentResult。
    """
    def __init__(self, config: ExperimentConfig, laboratory: Optional[ChannelLaboratory] = None):
        """
        Initializes the experiment with its configuration and an optional shared laboratory.

        Args:
            config: The validated experiment configuration.
            laboratory: Prebuilt systems for this configuration; built on first use when omitted.

        使用实验配置和可选的共享实验室初始化实验。

        参数：
            config: 已验证的实验配置。
            laboratory: 该配置的预构建系统；省略时在首次使用时构建。
        """
        self.logger = logging.getLogger(self.__class__.__name__)
        self.config = config
        self._laboratory = laboratory

    @property
    def laboratory(self) -> ChannelLaboratory:
        if self._laboratory is None:
            self._laboratory = ChannelLaboratory(self.config)
        return self._laboratory

    def runner(self) -> SweepRunner:
        return SweepRunner(self.laboratory, self.config.threads)

    @abstractmethod
    async def run(self) -> ExperimentResult:
        """
        Runs the experiment and returns its table, fits and claim checks.
        Must be implemented by any subclass.

        运行实验并返回结果表、拟合与结论检查。
        必须由任何子类实现。
        """
        pass

    def log_summary(self, result: ExperimentResult, columns=None):
        """
        Logs the result table and the claim checks.

        记录结果表和结论检查。
        """
        self.logger.info(f"\n{result.experiment.value} results:\n{SweepRunner.summary(result.table, columns)}")
        for name, fit in result.fits.items():
            self.logger.info(f"Rate fit {name}: {fit.preferred.value}, p={fit.p:.4f}, C={fit.C:.4g}, residual {fit.residual:.3e}")
        log_claims(result.claims, self.logger)
