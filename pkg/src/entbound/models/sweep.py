"""Sweep points and their result rows"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from entbound.models.base import Boundary, Preset


class SweepPoint(BaseModel):
    """One (L, beta, preset) cell of a sweep"""
    model_config = ConfigDict(frozen=True)

    L: int
    M: int
    n: int
    beta: float
    preset: Preset
    boundary: Boundary = Boundary.OPEN

    @property
    def sort_key(self) -> tuple:
        return (self.L, self.beta, self.preset.value)

    @property
    def label(self) -> str:
        return f"L={self.L} beta={self.beta} {self.preset.value}"


class SweepRow(BaseModel):
    """Result of one sweep point; the CSV holds every field except the per-seed detail and timing"""
    model_config = ConfigDict(frozen=True)

    L: int
    M: int
    n: int
    beta: float
    preset: Preset
    boundary: Boundary
    mean_max_entropy_nats: Optional[float] = None
    std_dev: Optional[float] = None
    bound_nats: float
    mean_nA_at_max: Optional[float] = None
    seeds: int
    error: str = ""
    per_seed_maxima: List[float] = Field(default_factory=list)
    wall_time_s: float = Field(0.0, description="Seconds spent on the point; kept out of the CSV")

    @property
    def failed(self) -> bool:
        return bool(self.error)


class SweepTiming(BaseModel):
    L: int
    beta: float
    preset: Preset
    wall_time_s: float
    error: str = ""


class SweepSummary(BaseModel):
    """Sidecar written next to the sweep CSV"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    schema_version: int
    master_seed: int
    points: List[SweepTiming]
    total_wall_time_s: float
    failed_points: int
    config: dict = Field(default_factory=dict, description="The ExperimentConfig the sweep ran with")
