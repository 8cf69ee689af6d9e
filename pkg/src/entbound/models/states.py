"""State vectors and the thermal ensemble that seeds them"""
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from entbound.core.constants import NORM_TOL
from entbound.core.errors import DomainError
from entbound.models.basis import SectorBasis
from entbound.models.hamiltonian import SpectralData


class StateProvenance(BaseModel):
    """Where a state came from"""
    model_config = ConfigDict(frozen=True)

    kind: str = Field(description="rpts, evolved, phased, max_entangled, loaded or explicit")
    seed: Optional[int] = None
    beta: Optional[float] = None
    tau: Optional[float] = None


class StateVector(BaseModel):
    """Normalized complex amplitudes over a SectorBasis"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    basis: SectorBasis
    amplitudes: np.ndarray
    provenance: StateProvenance = StateProvenance(kind="explicit")

    @model_validator(mode="after")
    def check_shape_and_norm(self) -> "StateVector":
        if self.amplitudes.shape != (self.basis.dim,):
            raise ValueError(
                f"amplitude vector has shape {self.amplitudes.shape}, basis needs ({self.basis.dim},)"
            )
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOL * max(1.0, math.sqrt(self.basis.dim)):
            raise ValueError(f"state is not normalized: |psi| = {norm!r}")
        return self

    @classmethod
    def normalized(
        cls,
        basis: SectorBasis,
        amplitudes: np.ndarray,
        provenance: Optional[StateProvenance] = None,
    ) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return cls(
            basis=basis,
            amplitudes=amps / norm,
            provenance=provenance or StateProvenance(kind="explicit"),
        )

    @classmethod
    def product(cls, basis: SectorBasis, mask: int) -> "StateVector":
        """Single occupation configuration"""
        amps = np.zeros(basis.dim, dtype=complex)
        amps[basis.index_of(mask)] = 1.0
        return cls(basis=basis, amplitudes=amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


class ThermalEnsembleSpec(BaseModel):
    """Random pure thermal state parameters"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    beta: float = Field(..., ge=0.0, description="Inverse temperature")
    seed: int = Field(..., ge=0, lt=2**64, description="64-bit RNG seed")
    spectral: SpectralData

    @field_validator("beta")
    @classmethod
    def validate_beta(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("beta must be finite")
        return v
