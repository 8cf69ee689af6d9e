"""Hamiltonian parameters, matrices and spectra"""
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from entbound.models.base import Boundary, Preset
from entbound.models.basis import SectorBasis

_PRESETS = {
    Preset.NONINTEGRABLE: dict(t=1.9, t_prime=1.9, V=0.5, V_prime=0.5),
    Preset.NN_HOPPING_ONLY: dict(t=1.9, t_prime=0.0, V=0.0, V_prime=0.0),
    Preset.INTERACTION_ONLY: dict(t=0.0, t_prime=0.0, V=0.5, V_prime=0.5),
    Preset.INTEGRABLE: dict(t=1.9, t_prime=0.0, V=0.5, V_prime=0.0),
}


class HamiltonianParams(BaseModel):
    """Couplings of the t-t'-V-V' spinless fermion chain"""
    model_config = ConfigDict(frozen=True)

    t: float = Field(0.0, description="Nearest-neighbour hopping")
    t_prime: float = Field(0.0, description="Next-nearest-neighbour hopping")
    V: float = Field(0.0, description="Nearest-neighbour interaction")
    V_prime: float = Field(0.0, description="Next-nearest-neighbour interaction")
    boundary: Boundary = Field(Boundary.OPEN, description="Open or periodic chain")
    preset: Preset = Field(Preset.CUSTOM, description="Name of the preset these couplings came from")

    @field_validator("t", "t_prime", "V", "V_prime")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("couplings must be finite reals")
        return v

    @classmethod
    def from_preset(cls, name: "Preset | str", boundary: Boundary = Boundary.OPEN) -> "HamiltonianParams":
        preset = Preset(name)
        if preset not in _PRESETS:
            raise ValueError(f"unknown preset {name!r}; choose one of {[p.value for p in _PRESETS]}")
        return cls(**_PRESETS[preset], boundary=boundary, preset=preset)

    @property
    def has_hopping(self) -> bool:
        return self.t != 0.0 or self.t_prime != 0.0


class HamiltonianMatrix(BaseModel):
    """Dense real symmetric matrix of the chain restricted to one n-sector"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    basis: SectorBasis
    params: HamiltonianParams
    elements: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.elements.shape[0])


class SpectralData(BaseModel):
    """Ascending eigenvalues and orthonormal eigenvectors (columns)"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    basis: SectorBasis
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    operator_norm: float = Field(description="Spectral norm max|E| of the Hamiltonian")

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.size)
