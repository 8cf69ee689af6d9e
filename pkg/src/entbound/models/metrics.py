"""Entanglement spectra and maximization results"""
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from entbound.core.constants import BOUND_SLACK, DEFAULT_RESTARTS
from entbound.models.base import MaximizationMode


class SectorSpectrum(BaseModel):
    """Reduced-density-matrix eigenvalues carried by one nA block"""
    model_config = ConfigDict(frozen=True)

    n_a: int
    weight: float = Field(description="|a_nA|^2, the probability of nA particles in A")
    eigenvalues: List[float] = Field(description="|a|^2 |b_i|^2, descending, clamped at 0")


class SectorSchmidt(BaseModel):
    """Block-diagonal spectrum of rho_A"""
    model_config = ConfigDict(frozen=True)

    sectors: List[SectorSpectrum]

    @property
    def spectrum(self) -> np.ndarray:
        if not self.sectors:
            return np.zeros(0)
        return np.concatenate([np.asarray(s.eigenvalues, dtype=float) for s in self.sectors])

    @property
    def total_weight(self) -> float:
        return float(sum(s.weight for s in self.sectors))

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.spectrum))


class MaximizationConfig(BaseModel):
    """Simplex search over evolution phases"""
    model_config = ConfigDict(frozen=True)

    restarts_per_seed: int = Field(DEFAULT_RESTARTS, ge=1, description="Nelder-Mead restarts per RPTS seed")
    rpts_seeds: int = Field(6, ge=1, description="Number of random pure thermal initial states")
    max_iterations: int = Field(20000, ge=1, description="Iteration cap per Nelder-Mead run")
    convergence_tol: float = Field(1e-7, gt=0, description="Simplex spread in entropy at convergence")
    mode: MaximizationMode = Field(MaximizationMode.PHASE_SIMPLEX)
    tau_max: float = Field(200.0, ge=0, description="Upper end of the time grid (time_scan mode)")
    tau_step: float = Field(0.05, gt=0, description="Time grid spacing (time_scan mode)")
    adaptive_restarts: bool = Field(
        True, description="Keep restarting, up to the cap, while the best value misses the bound"
    )
    warm_start: bool = Field(
        False, description="Start the first restart at the best point of a time scan over tau_max, tau_step"
    )


class SeedOutcome(BaseModel):
    """Best value found for one RPTS initial state"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    seed: int
    initial_entropy: float
    max_entropy: float
    phases: np.ndarray
    number_mean: float
    restarts: int
    converged: List[bool]


class MaximizationResult(BaseModel):
    """Aggregate over RPTS seeds of max_tau S_ent"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    mode: MaximizationMode
    bound: float
    per_seed_maxima: List[float]
    mean: float
    std_dev: float = Field(description="Sample standard deviation (n-1 denominator)")
    best_phases: np.ndarray
    best_state_number_mean: float = Field(description="Mean over seeds of nA-bar at each seed's maximum")
    outcomes: List[SeedOutcome] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_bound(self) -> "MaximizationResult":
        worst = max(self.per_seed_maxima, default=0.0)
        if worst > self.bound + BOUND_SLACK:
            raise ValueError(f"maximum {worst} exceeds the closed-system bound {self.bound}")
        return self

    @property
    def gap(self) -> float:
        return self.bound - self.mean


class TimeScanResult(BaseModel):
    """Entropy along an explicit time grid"""
    model_config = ConfigDict(frozen=True)

    best_tau: float
    best_entropy: float
    trace: List[Tuple[float, float]]
    best_number_mean: Optional[float] = None

    @field_validator("trace")
    @classmethod
    def validate_trace(cls, v: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        if not v:
            raise ValueError("time scan produced an empty trace")
        return v
