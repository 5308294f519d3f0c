import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional
import numpy as np
from config.experiment_config import ExperimentConfig
from core.geometry.channel_profile import build_profile
from core.geometry.mapped_grid import MappedGrid, build_mapped_grid
from core.manifold.coordinates import CoordinateMap, build_coordinate_map
from core.manifold.gap_report import GapReport, gap_report_for, select_gap_dimension
from core.manifold.graph_fn import GraphFn
from core.manifold.graph_transform import GraphGridSpec, compute_graph
from core.manifold.reduced_system import ReducedSystem
from core.nonlinearity.cutoff import Cutoff
from core.nonlinearity.estimators import analytic_lipschitz_bound
from core.nonlinearity.nonlinear_operator import GateSpace, NonlinearOperator
from core.nonlinearity.reaction_term import build_reaction
from core.operators.discrete_operator import DiscreteOperator, assemble_A0, assemble_Aeps
from core.operators.eigen_basis import EigenBasis, align_signs, eigs
from core.operators.operator_config import OperatorConfig
from core.operators.transfer_operators import TransferOperators, build_transfer
from core.semiflow.attractor import AttractorApprox, approximate_attractor
from core.semiflow.equilibria import find_equilibria
from core.semiflow.stepper import Stepper, galerkin_cut

AUTO_RADIUS_FACTOR = 1.5
EXTRA_MODES = 8
PROBE_WAVES = (0, 1, 2, 3)

@dataclass(eq=False)
class LimitSystem:
    operator: DiscreteOperator
    basis: EigenBasis
    galerkin: EigenBasis
    cut: float
    nonlinear: NonlinearOperator
    stepper: Stepper

@dataclass(eq=False)
class ThinSystem:
    """
    One epsilon: A_eps with its (sign-aligned) basis, the thin-channel dynamics, and the
    limit dynamics gated through the thin-channel norm (the `lifted` pair).
    """
    epsilon: float
    operator: DiscreteOperator
    basis: EigenBasis
    galerkin: EigenBasis
    nonlinear: NonlinearOperator
    stepper: Stepper
    nonlinear_lifted: NonlinearOperator
    stepper_lifted: Stepper
    coordinates: CoordinateMap

@dataclass(eq=False)
class ManifoldPair:
    graph: GraphFn
    graph_lifted: GraphFn
    reduced: ReducedSystem
    reduced_lifted: ReducedSystem

class ChannelLaboratory:
    """
    Builds the systems one configuration talks about. The mapped grid, the transfer pair and
    everything on the limit side are built once; thin-channel systems are built per call so
    that a sweep holds one complete basis per running row.
    """
    def __init__(self, config: ExperimentConfig):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.config = config
        self.profile = build_profile(config.profile_kind, config.profile_params, config.dimension)
        self.reaction = build_reaction(config.reaction_kind, config.reaction_a, config.reaction_b, config.tilt, config.M)

    def operator_config(self, epsilon: Optional[float] = None) -> OperatorConfig:
        return OperatorConfig(mu=self.config.mu, epsilon=epsilon, alpha=self.config.alpha)

    @cached_property
    def grid(self) -> MappedGrid:
        return build_mapped_grid(self.profile, self.config.nx, self.config.nz)

    @cached_property
    def transfer(self) -> TransferOperators:
        return build_transfer(self.grid)

    def _basis(self, op: DiscreteOperator, modes: int, check_degenerate: bool = True) -> EigenBasis:
        count = None if op.size <= self.config.dense_limit else min(modes + EXTRA_MODES, op.size - 2)
        return eigs(op, count, self.config.dense_limit, check_degenerate)

    @cached_property
    def limit(self) -> LimitSystem:
        config = self.config
        op = assemble_A0(self.profile, self.operator_config(), self.grid.nx)
        basis = self._basis(op, config.n_modes)
        cut = galerkin_cut(basis, config.n_modes)
        galerkin = basis.below(cut)

        radius = config.R if config.R is not None else AUTO_RADIUS_FACTOR * self.reaction.M * basis.alpha_norm(np.ones(op.size))
        nonlinear = NonlinearOperator(self.reaction, Cutoff(radius), basis, op.x_nodes)
        stepper = Stepper(galerkin, nonlinear, config.dt, config.scheme)

        self.logger.info(f"Limit system: {galerkin.count} Galerkin modes below {cut:.6g}, cut-off radius R={radius:.6g}")
        return LimitSystem(op, basis, galerkin, cut, nonlinear, stepper)

    @property
    def cutoff(self) -> Cutoff:
        return self.limit.nonlinear.cutoff

    @cached_property
    def gap_L_F(self) -> float:
        return analytic_lipschitz_bound(self.limit.nonlinear)

    @cached_property
    def gap_report(self) -> GapReport:
        """Gap test for the configured m, or the selected m when the configuration says auto."""
        L_F, kappa = self.gap_L_F, self.transfer.kappa
        if self.config.m is None:
            return select_gap_dimension(self.limit.basis, L_F, kappa, self.config.alpha, self.config.m_max)
        return gap_report_for(self.limit.basis, self.config.m, L_F, kappa, self.config.alpha)

    @property
    def m(self) -> int:
        return self.gap_report.m

    @cached_property
    def limit_coordinates(self) -> CoordinateMap:
        return build_coordinate_map(self.limit.galerkin, self.m)

    @property
    def metric_weights(self) -> np.ndarray:
        return self.limit_coordinates.weights

    @cached_property
    def graph_spec(self) -> GraphGridSpec:
        return GraphGridSpec(self.cutoff.R, self.config.nodes_per_axis, max_iterations=self.config.max_iterations)

    def system(self, epsilon: float) -> ThinSystem:
        config, limit, transfer = self.config, self.limit, self.transfer
        op = assemble_Aeps(self.grid, self.operator_config(epsilon))

        # straight channels carry exact transverse degeneracies
        basis = self._basis(op, limit.galerkin.count, check_degenerate=False)
        basis = align_signs(basis, limit.basis, transfer, min(limit.galerkin.count, basis.count))
        galerkin = basis.below(limit.cut)

        nonlinear = NonlinearOperator(self.reaction, self.cutoff, basis, self.grid.nodes[:, 0])
        lifted = NonlinearOperator(self.reaction, self.cutoff, basis, limit.operator.x_nodes, GateSpace.LIFTED, transfer)
        coordinates = build_coordinate_map(galerkin, self.m, limit.basis, transfer)

        self.logger.debug(f"eps={epsilon:.6g}: {galerkin.count} Galerkin modes, lambda_1={basis.values[0]:.10g}")
        return ThinSystem(
            float(epsilon), op, basis, galerkin,
            nonlinear, Stepper(galerkin, nonlinear, config.dt, config.scheme),
            lifted, Stepper(limit.galerkin, lifted, config.dt, config.scheme),
            coordinates
        )

    def seeds(self, size: int) -> List[np.ndarray]:
        """Constant seed fields with the configured levels."""
        return [np.full(size, float(level)) for level in self.config.equilibrium_seeds]

    def reduced_seeds(self, system: ReducedSystem) -> List[np.ndarray]:
        stepper, coordinates = system.stepper, system.coordinates
        return [coordinates.from_modes(stepper.coefficients(field)[:system.m]) for field in self.seeds(stepper.basis.operator.size)]

    def probes(self) -> List[np.ndarray]:
        """cos(k pi x) on the limit nodes, k = 0..3."""
        x = self.limit.operator.x_nodes
        return [np.cos(k * np.pi * x) for k in PROBE_WAVES]

    def attractor(self, stepper: Stepper) -> AttractorApprox:
        equilibria = find_equilibria(self.seeds(stepper.basis.operator.size), stepper)
        return approximate_attractor(equilibria, self.config.samples_per_unit)

    @cached_property
    def limit_attractor(self) -> AttractorApprox:
        return self.attractor(self.limit.stepper)

    @cached_property
    def limit_graph(self) -> GraphFn:
        return compute_graph(self.limit.stepper, self.limit_coordinates, self.graph_spec, self.gap_report, self.config.enforce_gap)

    @cached_property
    def limit_reduced(self) -> ReducedSystem:
        return ReducedSystem(self.limit_graph, self.limit.stepper, self.metric_weights)

    def manifolds(self, system: ThinSystem) -> ManifoldPair:
        """Graphs and reduced systems of the thin-channel and lifted-limit dynamics on the limit coordinate box."""
        spec, report, enforce = self.graph_spec, self.gap_report, self.config.enforce_gap
        graph = compute_graph(system.stepper, system.coordinates, spec, report, enforce, grid_coordinates=self.limit_coordinates)
        graph_lifted = compute_graph(system.stepper_lifted, self.limit_coordinates, spec, report, enforce)
        weights = self.metric_weights
        return ManifoldPair(graph, graph_lifted, ReducedSystem(graph, system.stepper, weights), ReducedSystem(graph_lifted, system.stepper_lifted, weights))

    def warm_up(self):
        """Builds the shared read-only pieces before rows run in parallel."""
        _ = self.transfer, self.limit, self.gap_report, self.limit_coordinates
