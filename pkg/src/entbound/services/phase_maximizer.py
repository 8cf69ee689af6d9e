"""Maximize S_ent over the phases exp(-i E tau) of a unitary evolution.

The time orbit of a state is a line on the torus of eigen-phases; searching the torus
directly with Nelder-Mead finds the supremum over tau without integrating long times.
Phase 0 (lowest distinct eigenvalue) is pinned as the gauge, so the search dimension is
the number of distinct eigenvalues minus one.
"""
from typing import Callable, List, Optional

import numpy as np
from loguru import logger
from scipy.optimize import minimize

from entbound.core.constants import (
    MAX_PHASE_DIMENSION,
    MAX_RESTARTS,
    SATURATION_GAP,
    SIMPLEX_OFFSET,
)
from entbound.core.errors import DomainError, OptimizationDimensionError
from entbound.models.base import MaximizationMode
from entbound.models.hamiltonian import SpectralData
from entbound.models.metrics import (
    MaximizationConfig,
    MaximizationResult,
    SeedOutcome,
    TimeScanResult,
)
from entbound.models.states import ThermalEnsembleSpec
from entbound.services.entanglement_measures import BlockEntropyEvaluator
from entbound.services.quantum_states import (
    eigen_coefficients,
    group_energies,
    phase_groups,
    random_pure_thermal_state,
)
from entbound.services.sector_combinatorics import closed_system_bound
from entbound.utils.metrics import mean_and_sample_std

ProgressHook = Callable[[int, float], None]
SeedHook = Callable[[int, SeedOutcome], None]

TWO_PI = 2.0 * np.pi


class ProgressLogger:
    """Verbose-mode reporter: simplex progress every ``every`` iterations and one line per seed.

    Must stay picklable for the sweep worker pool.
    """

    def __init__(self, label: str, seeds: int, every: int = 200):
        self.label = label
        self.seeds = seeds
        self.every = every

    def __call__(self, iteration: int, best: float) -> None:
        if iteration % self.every == 0:
            logger.info(f"{self.label}: iteration {iteration}, best S={best:.6f}")

    def seed_done(self, index: int, outcome: SeedOutcome) -> None:
        logger.info(
            f"{self.label}: seed {index + 1}/{self.seeds} S_max={outcome.max_entropy:.6f} "
            f"(from {outcome.initial_entropy:.6f}, {outcome.restarts} restart(s))"
        )


def derive_seeds(master_seed: int, count: int) -> List[int]:
    """Independent 64-bit RPTS seeds from one master seed"""
    state = np.random.SeedSequence(master_seed).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]


def time_grid(tau_max: float, step: float) -> np.ndarray:
    if step <= 0.0:
        raise DomainError(f"time step must be positive, got {step}")
    if tau_max < 0.0:
        raise DomainError(f"tau_max must be non-negative, got {tau_max}")
    count = int(np.floor(tau_max / step + 1e-9)) + 1
    return np.arange(count) * step


class PhaseObjective:
    """Negative entropy of the phased state as a function of the free phases.

    Keeps the best entropy seen over all evaluations; ``history`` holds the best-so-far
    value after each evaluation.
    """

    def __init__(self, spectral: SpectralData, coefficients: np.ndarray):
        self.coefficients = coefficients
        self.labels, self.groups = phase_groups(spectral)
        self.evaluator = BlockEntropyEvaluator(spectral.basis, spectral.eigenvectors)
        self.best_entropy = -np.inf
        self.best_phases = np.zeros(self.groups)
        self.history: List[float] = []
        self.evaluations = 0

    @property
    def dimension(self) -> int:
        return self.groups - 1

    def full_phases(self, free: np.ndarray) -> np.ndarray:
        return np.concatenate([[0.0], np.asarray(free, dtype=float)])

    def phased(self, phases: np.ndarray) -> np.ndarray:
        return self.coefficients * np.exp(-1j * phases[self.labels])

    def entropy(self, phases: np.ndarray) -> float:
        return self.evaluator.entropy(self.phased(phases))

    def __call__(self, free: np.ndarray) -> float:
        phases = self.full_phases(free)
        value = self.entropy(phases)
        self.evaluations += 1
        if value > self.best_entropy:
            self.best_entropy = value
            self.best_phases = np.mod(phases, TWO_PI)
        self.history.append(self.best_entropy)
        return -value


def _simplex_run(
    objective: PhaseObjective,
    start: np.ndarray,
    config: MaximizationConfig,
    progress: Optional[ProgressHook],
) -> bool:
    """One Nelder-Mead run from ``start``; returns whether it converged"""
    dim = objective.dimension
    simplex = np.vstack([start, start + SIMPLEX_OFFSET * np.eye(dim)])
    iteration = 0

    def on_iteration(_xk: np.ndarray) -> None:
        nonlocal iteration
        iteration += 1
        if progress is not None:
            progress(iteration, objective.best_entropy)

    res = minimize(
        objective,
        start,
        method="Nelder-Mead",
        callback=on_iteration,
        options={
            "initial_simplex": simplex,
            "maxiter": config.max_iterations,
            "xatol": np.inf,
            "fatol": config.convergence_tol,
            "adaptive": False,
        },
    )
    if not res.success:
        logger.warning(
            f"Nelder-Mead stopped without converging after {res.nit} iterations "
            f"({res.nfev} evaluations): {res.message}; best S={objective.best_entropy:.6f}"
        )
    return bool(res.success)


def _maximize_seed(
    spectral: SpectralData,
    ensemble: ThermalEnsembleSpec,
    config: MaximizationConfig,
    bound: float,
    progress: Optional[ProgressHook],
) -> SeedOutcome:
    state = random_pure_thermal_state(ensemble)
    objective = PhaseObjective(spectral, eigen_coefficients(state, spectral))
    initial = objective.entropy(np.zeros(objective.groups))
    objective(np.zeros(objective.dimension))

    converged: List[bool] = []
    restarts = 0
    if objective.dimension > 0:
        starts_from_scan = None
        if config.warm_start:
            scan = time_scan(spectral, ensemble, config.tau_max, config.tau_step)
            E_g = group_energies(spectral)
            starts_from_scan = np.mod((E_g - E_g[0])[1:] * scan.best_tau, TWO_PI)

        while True:
            rng = np.random.default_rng([ensemble.seed, restarts])
            if restarts == 0 and starts_from_scan is not None:
                start = starts_from_scan
            else:
                start = rng.uniform(0.0, TWO_PI, objective.dimension)
            converged.append(_simplex_run(objective, start, config, progress))
            restarts += 1
            logger.debug(
                f"seed {ensemble.seed} restart {restarts}: best S={objective.best_entropy:.6f} "
                f"(bound {bound:.6f})"
            )
            if restarts < config.restarts_per_seed:
                continue
            short_of_bound = objective.best_entropy < bound - SATURATION_GAP
            if config.adaptive_restarts and short_of_bound and restarts < MAX_RESTARTS:
                continue
            break

    return SeedOutcome(
        seed=ensemble.seed,
        initial_entropy=initial,
        max_entropy=objective.best_entropy,
        phases=objective.best_phases,
        number_mean=objective.evaluator.number_mean(objective.phased(objective.best_phases)),
        restarts=restarts,
        converged=converged,
    )


def _scan_seed(
    spectral: SpectralData, ensemble: ThermalEnsembleSpec, config: MaximizationConfig
) -> SeedOutcome:
    scan = time_scan(spectral, ensemble, config.tau_max, config.tau_step)
    E_g = group_energies(spectral)
    return SeedOutcome(
        seed=ensemble.seed,
        initial_entropy=scan.trace[0][1],
        max_entropy=scan.best_entropy,
        phases=np.mod((E_g - E_g[0]) * scan.best_tau, TWO_PI),
        number_mean=scan.best_number_mean if scan.best_number_mean is not None else float("nan"),
        restarts=0,
        converged=[True],
    )


def maximize_entropy(
    spectral: SpectralData,
    ensemble: ThermalEnsembleSpec,
    config: MaximizationConfig,
    progress: Optional[ProgressHook] = None,
    on_seed: Optional[SeedHook] = None,
) -> MaximizationResult:
    """max over tau of S_ent for ``config.rpts_seeds`` RPTS initial states.

    ``ensemble.seed`` is the master seed from which the per-state seeds are derived.
    ``progress`` sees (iteration, best entropy) inside each simplex run; ``on_seed`` sees
    (seed index, outcome) once per initial state.
    """
    _, groups = phase_groups(spectral)
    if config.mode == MaximizationMode.PHASE_SIMPLEX and groups - 1 > MAX_PHASE_DIMENSION:
        raise OptimizationDimensionError(
            f"phase space has {groups - 1} free phases (limit {MAX_PHASE_DIMENSION}); "
            f"use mode=time_scan for this system size"
        )
    bound = closed_system_bound(spectral.basis.spec)
    outcomes: List[SeedOutcome] = []
    for index, seed in enumerate(derive_seeds(ensemble.seed, config.rpts_seeds)):
        seed_ensemble = ThermalEnsembleSpec(beta=ensemble.beta, seed=seed, spectral=spectral)
        if config.mode == MaximizationMode.TIME_SCAN:
            outcome = _scan_seed(spectral, seed_ensemble, config)
        else:
            outcome = _maximize_seed(spectral, seed_ensemble, config, bound, progress)
        logger.info(
            f"seed {seed}: S_init={outcome.initial_entropy:.4f} S_max={outcome.max_entropy:.4f} "
            f"nA={outcome.number_mean:.3f} restarts={outcome.restarts}"
        )
        outcomes.append(outcome)
        if on_seed is not None:
            on_seed(index, outcome)

    maxima = [o.max_entropy for o in outcomes]
    mean, std = mean_and_sample_std(maxima)
    best = max(outcomes, key=lambda o: o.max_entropy)
    return MaximizationResult(
        mode=config.mode,
        bound=bound,
        per_seed_maxima=maxima,
        mean=mean,
        std_dev=std,
        best_phases=best.phases,
        best_state_number_mean=float(np.mean([o.number_mean for o in outcomes])),
        outcomes=outcomes,
    )


def time_scan(
    spectral: SpectralData, ensemble: ThermalEnsembleSpec, tau_max: float, step: float
) -> TimeScanResult:
    """S_ent of the RPTS for ``ensemble`` along tau = 0, step, ..., tau_max"""
    state = random_pure_thermal_state(ensemble)
    coefficients = eigen_coefficients(state, spectral)
    evaluator = BlockEntropyEvaluator(spectral.basis, spectral.eigenvectors)
    trace = []
    best_tau, best_entropy, best_w = 0.0, -np.inf, coefficients
    for tau in time_grid(tau_max, step):
        w = coefficients * np.exp(-1j * spectral.eigenvalues * tau)
        value = evaluator.entropy(w)
        trace.append((float(tau), value))
        if value > best_entropy:
            best_tau, best_entropy, best_w = float(tau), value, w
    return TimeScanResult(
        best_tau=best_tau,
        best_entropy=best_entropy,
        trace=trace,
        best_number_mean=evaluator.number_mean(best_w),
    )
