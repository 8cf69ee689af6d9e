"""System specification and closed-form sector tables"""
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from entbound.models.base import Statistics


class SystemSpec(BaseModel):
    """Lattice of L sites split into A (first M sites) and B, holding n particles"""
    model_config = ConfigDict(frozen=True)

    L: int = Field(..., ge=1, description="Number of lattice sites")
    M: int = Field(..., ge=1, description="Number of sites in subsystem A")
    n: int = Field(..., ge=0, description="Total particle number")
    statistics: Statistics = Field(Statistics.FERMIONIC, description="Particle statistics")

    @model_validator(mode="after")
    def check_ranges(self) -> "SystemSpec":
        if self.M > self.L:
            raise ValueError(f"subsystem size must satisfy 1 <= M <= L, got M={self.M}, L={self.L}")
        if self.statistics == Statistics.FERMIONIC and self.n > self.L:
            raise ValueError(
                f"fermionic particle number must satisfy 0 <= n <= L, got n={self.n}, L={self.L}"
            )
        return self

    @property
    def sites_b(self) -> int:
        return self.L - self.M

    @property
    def is_fermionic(self) -> bool:
        return self.statistics == Statistics.FERMIONIC

    def label(self) -> str:
        return f"L={self.L} M={self.M} n={self.n} {self.statistics.value}"


class SectorRow(BaseModel):
    """One nA block of the direct-sum decomposition"""
    model_config = ConfigDict(frozen=True)

    n_a: int
    dim_a: int
    dim_b: int
    d: int


class SectorTable(BaseModel):
    """Exact sector dimensions over the admissible nA range"""
    model_config = ConfigDict(frozen=True)

    spec: SystemSpec
    entries: List[SectorRow]

    @property
    def total(self) -> int:
        """Sum of d over sectors: the number of equal Schmidt weights at saturation"""
        return sum(row.d for row in self.entries)

    @property
    def n_a_values(self) -> List[int]:
        return [row.n_a for row in self.entries]

    def d_values(self) -> List[int]:
        return [row.d for row in self.entries]


class NumberDistribution(BaseModel):
    """Probability of finding nA particles in subsystem A"""
    model_config = ConfigDict(frozen=True)

    probabilities: List[Tuple[int, float]]
    mean: float

    def as_dict(self) -> dict:
        return dict(self.probabilities)

    def total_variation(self, other: "NumberDistribution") -> float:
        """Total-variation distance over the union of supports"""
        mine, theirs = self.as_dict(), other.as_dict()
        keys = sorted(set(mine) | set(theirs))
        return 0.5 * sum(abs(mine.get(k, 0.0) - theirs.get(k, 0.0)) for k in keys)


class EntropyCorollaries(BaseModel):
    """Bounds implied for pure global states, where S(rho_AB) = 0"""
    model_config = ConfigDict(frozen=True)

    conditional_entropy_lower_bound: float = Field(description="Lower bound on S(A|B) in nats")
    mutual_info_upper_bound: float = Field(description="Upper bound on I(A;B) in nats")


class BoundReport(BaseModel):
    """Everything the ``bound`` subcommand prints for one system"""
    model_config = ConfigDict(frozen=True)

    spec: SystemSpec
    closed_system_bound: float
    general_bound: float
    flattened_bound: Optional[float] = Field(None, description="Fermions only")
    flattening_threshold: Optional[int] = Field(None, description="Fermions only")
    distribution: NumberDistribution
    corollaries: EntropyCorollaries
