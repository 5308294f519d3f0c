import logging
from dataclasses import asdict, dataclass, fields
from typing import List, Tuple
import numpy as np
from core.geometry.channel_profile import to_thin_domain_norm
from core.manifold.distances import graph_distance, reduced_map_distance, sampling_ball
from core.nonlinearity.estimators import rho_beta_metrics
from core.operators.measurements import normalized_probe, resolvent_distance
from core.semiflow.attractor import AttractorApprox
from core.semiflow.metrics import SUP_NORM_SLACK, smoothing_lipschitz, time_one_distance
from core.shadowing.attractor_bound import AttractorBoundReport, ReducedAttractor, attractor_bound_check, reduced_attractor
from core.shadowing.hausdorff import hausdorff_distance
from core.shadowing.pseudo_trajectory import PseudoTrajectory, perturbed_orbits, true_orbit
from core.shadowing.shadow_solver import ShadowingContext, ShadowingEstimate, lipschitz_shadowing_estimate
from .laboratory import ChannelLaboratory, ManifoldPair, ThinSystem

SAMPLE_FIELDS = 12
NEIGHBORHOOD_FRACTION = 0.1
MAP_SAMPLE_NODES = 21

logger = logging.getLogger(__name__)

@dataclass
class ConvergenceMetrics:
    """
    One epsilon row of the full sweep. H1Q distances are measured on the reference channel,
    H1Qeps is the same number rescaled to the thin channel by eps^((d-1)/2).
    """
    epsilon: float
    status: str = "ok"
    reason: str = ""
    tau: float = float("nan")
    rho: float = float("nan")
    beta: float = float("nan")
    graph_dist: float = float("nan")
    reduced_map_dist: float = float("nan")
    reduced_map_dist_c1: float = float("nan")
    time_one_dist: float = float("nan")
    smoothing_lipschitz: float = float("nan")
    attractor_dist_reduced: float = float("nan")
    attractor_dist_H1Q: float = float("nan")
    attractor_dist_H1Qeps: float = float("nan")
    L_hat: float = float("nan")
    shadowing_variation: float = float("nan")
    bound_margin: float = float("nan")
    bound_holds: bool = False

    def as_row(self) -> dict:
        return asdict(self)

CONVERGENCE_COLUMNS = [item.name for item in fields(ConvergenceMetrics)]

@dataclass(eq=False)
class ShadowingOutcome:
    estimate: ShadowingEstimate
    report: AttractorBoundReport
    attractor_lifted: ReducedAttractor
    attractor: ReducedAttractor

def sample_fields(attractor: AttractorApprox, count: int = SAMPLE_FIELDS) -> List[np.ndarray]:
    """Evenly spaced attractor fields (equilibria first)."""
    fields_ = attractor.fields()
    indices = np.unique(np.linspace(0, len(fields_) - 1, min(count, len(fields_))).round().astype(int))
    return [fields_[i] for i in indices]

def resolvent_tau(lab: ChannelLaboratory, system: ThinSystem) -> float:
    """max ||A_eps^{-1} E f - E A_0^{-1} f||_{H^1_eps} over normalized lifted cosine data."""
    lifted = [normalized_probe(system.operator, lab.transfer.extend(probe)) for probe in lab.probes()]
    return resolvent_distance(lab.profile, lab.operator_config(system.epsilon), lab.grid, lifted)

def nonlinearity_closeness(lab: ChannelLaboratory, system: ThinSystem) -> Tuple[float, float]:
    return rho_beta_metrics(sample_fields(lab.limit_attractor), lab.transfer, (system.nonlinear, system.nonlinear_lifted), lab.probes()[1:])

def semiflow_distances(lab: ChannelLaboratory, system: ThinSystem) -> Tuple[float, float]:
    """Time-one distance on limit attractor fields and the smoothing constant of T_eps on lifted pairs."""
    samples = sample_fields(lab.limit_attractor)
    radius = (lab.reaction.M + SUP_NORM_SLACK) * lab.limit.operator.l2_norm(np.ones(lab.limit.operator.size))
    distance = time_one_distance(samples, system.stepper, system.stepper_lifted, lab.transfer, radius)

    lifted = [lab.transfer.extend(field) for field in samples]
    smoothing = smoothing_lipschitz(system.stepper, list(zip(lifted[:-1], lifted[1:])))
    return distance, smoothing

def attractor_coefficients(lab: ChannelLaboratory, system: ThinSystem, attractor: AttractorApprox) -> Tuple[np.ndarray, np.ndarray]:
    """
    Both attractors as coefficient rows of the thin-channel basis, scaled by sqrt(lambda) so
    that Euclidean distances are H^1_eps(Q) distances. Limit samples are lifted with E.
    """
    basis = system.basis
    scale = np.sqrt(basis.values)

    lifted = lab.transfer.extend(lab.limit_attractor.fields().T)
    limit_rows = basis.coefficients(lifted).T * scale

    points = attractor.coefficient_points()
    thin_rows = np.zeros((points.shape[0], basis.count))
    thin_rows[:, :points.shape[1]] = points
    return limit_rows, thin_rows * scale

def full_attractor_distance(lab: ChannelLaboratory, system: ThinSystem) -> Tuple[float, float]:
    """(dist in H^1_eps(Q), dist in H^1(Q_eps)) between the lifted limit attractor and the thin one."""
    attractor = lab.attractor(system.stepper)
    limit_rows, thin_rows = attractor_coefficients(lab, system, attractor)
    reference = hausdorff_distance(limit_rows, thin_rows)
    return reference, float(to_thin_domain_norm(reference, system.epsilon, lab.profile.d))

def shadowing_samples(lab: ChannelLaboratory, pair: ManifoldPair, attractor_lifted: ReducedAttractor, window: int) -> List[PseudoTrajectory]:
    """
    Pseudo-orbits of the lifted-limit reduced map: randomly perturbed orbits from each
    unstable equilibrium, plus true orbits of the thin-channel reduced map started on the
    sampled unstable branches.
    """
    config = lab.config
    T = pair.reduced_lifted.time_one
    unstable = [index for index, dim in enumerate(attractor_lifted.unstable_dims) if dim > 0]
    starts = [attractor_lifted.equilibria[index] for index in unstable] or attractor_lifted.equilibria[:1]

    samples = []
    for offset, start in enumerate(starts):
        samples.extend(perturbed_orbits(T, start, window, config.deltas, config.samples_per_delta, config.seed + offset))

    for polyline in attractor_lifted.polylines:
        orbit = true_orbit(pair.reduced.time_one, polyline[1], window)
        samples.append(PseudoTrajectory.from_points(orbit, T))

    return samples

def shadowing_estimate(lab: ChannelLaboratory, pair: ManifoldPair, attractor_lifted: ReducedAttractor, window: int) -> ShadowingEstimate:
    """L-hat of the lifted-limit reduced map from pseudo-orbits of length `window`."""
    lifted = pair.reduced_lifted
    context = ShadowingContext(
        np.array(attractor_lifted.equilibria),
        attractor_lifted.points,
        NEIGHBORHOOD_FRACTION * lifted.Rprime,
        close_right=True
    )
    samples = shadowing_samples(lab, pair, attractor_lifted, window)
    return lipschitz_shadowing_estimate(lifted.time_one, lifted.time_one_jacobian, samples, context)

def shadowing_bound(lab: ChannelLaboratory, pair: ManifoldPair) -> ShadowingOutcome:
    config = lab.config
    lifted, thin = pair.reduced_lifted, pair.reduced

    attractor_lifted = reduced_attractor(lifted, lab.reduced_seeds(lifted), config.samples_per_unit)
    attractor = reduced_attractor(thin, lab.reduced_seeds(thin), config.samples_per_unit)
    estimate = shadowing_estimate(lab, pair, attractor_lifted, config.window)

    ball = sampling_ball(lifted, 2.0 * lifted.Rprime, MAP_SAMPLE_NODES)
    report = attractor_bound_check(attractor_lifted, attractor, lifted.time_one, thin.time_one, estimate.L_hat, ball, weights=lab.metric_weights)
    return ShadowingOutcome(estimate, report, attractor_lifted, attractor)

def measure_convergence(lab: ChannelLaboratory, epsilon: float) -> ConvergenceMetrics:
    """All observables of one epsilon; module errors propagate to the sweep runner."""
    system = lab.system(epsilon)
    row = ConvergenceMetrics(float(epsilon))

    row.tau = resolvent_tau(lab, system)
    row.rho, row.beta = nonlinearity_closeness(lab, system)
    row.time_one_dist, row.smoothing_lipschitz = semiflow_distances(lab, system)

    pair = lab.manifolds(system)
    row.graph_dist = graph_distance(pair.graph, pair.graph_lifted, lab.transfer, norm_basis=system.basis)
    distance = reduced_map_distance(pair.reduced, pair.reduced_lifted)
    row.reduced_map_dist, row.reduced_map_dist_c1 = distance.c0, distance.c1

    row.attractor_dist_H1Q, row.attractor_dist_H1Qeps = full_attractor_distance(lab, system)

    outcome = shadowing_bound(lab, pair)
    row.L_hat = outcome.estimate.L_hat
    row.shadowing_variation = outcome.estimate.variation
    row.attractor_dist_reduced = outcome.report.hausdorff
    row.bound_margin = outcome.report.margin
    row.bound_holds = outcome.report.holds

    logger.info(f"eps={epsilon:.6g}: tau={row.tau:.3e}, graph={row.graph_dist:.3e}, H1Q={row.attractor_dist_H1Q:.3e}, L={row.L_hat:.3g}")
    return row
