"""Configuration for entbound sweeps and runtime settings"""
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from entbound.core.constants import DESK_MAX_L, ENV_PREFIX, EXTENDED_MAX_L
from entbound.core.errors import ConfigError
from entbound.models.base import Boundary, OutputFormat, Preset, Statistics
from entbound.models.hamiltonian import HamiltonianParams
from entbound.models.metrics import MaximizationConfig
from entbound.utils.validation import describe_validation_error


class Settings(BaseSettings):
    """Process-wide defaults, read from ENTBOUND_* variables and an optional .env file"""
    model_config = SettingsConfigDict(env_prefix=ENV_PREFIX, env_file=".env", extra="ignore")

    output_dir: Path = Field(Path("results"), description="Default directory for sweep output")
    log_level: str = Field("INFO", description="Console log level")
    log_dir: Optional[Path] = Field(None, description="Directory for rotating log files")


class SystemConfig(BaseModel):
    """Subsystem and particle number held fixed across a sweep"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    M: int = Field(4, ge=1, description="Sites in subsystem A (the left M sites)")
    n: int = Field(3, ge=0, description="Total particle number")
    statistics: Statistics = Field(Statistics.FERMIONIC, description="Particle statistics")
    boundary: Boundary = Field(Boundary.OPEN, description="Chain boundary condition")


class HamiltonianConfig(BaseModel):
    """Which couplings each sweep point uses"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    presets: List[Preset] = Field(
        default_factory=lambda: [Preset.NONINTEGRABLE],
        description="Presets swept over; 'custom' takes its couplings from 'custom'",
    )
    custom: Optional[HamiltonianParams] = Field(None, description="Explicit t, t', V, V' couplings")

    @field_validator("presets")
    @classmethod
    def validate_presets(cls, v: List[Preset]) -> List[Preset]:
        if not v:
            raise ValueError("at least one Hamiltonian preset is required")
        if len(set(v)) != len(v):
            raise ValueError("presets must not repeat")
        return v

    @model_validator(mode="after")
    def check_custom(self) -> "HamiltonianConfig":
        if Preset.CUSTOM in self.presets and self.custom is None:
            raise ValueError("preset 'custom' needs explicit couplings under 'custom'")
        return self

    def params_for(self, preset: Preset, boundary: Boundary) -> HamiltonianParams:
        if preset == Preset.CUSTOM:
            return self.custom.model_copy(update={"boundary": boundary, "preset": Preset.CUSTOM})
        return HamiltonianParams.from_preset(preset, boundary)


class OutputConfig(BaseModel):
    """Where and how sweep results are written"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    directory: Optional[Path] = Field(None, description="Output directory; falls back to Settings.output_dir")
    formats: List[OutputFormat] = Field(
        default_factory=lambda: [OutputFormat.CSV, OutputFormat.JSON, OutputFormat.SVG],
        description="Artifacts to write",
    )
    jobs: int = Field(1, ge=1, description="Worker processes for sweep points")


class ExperimentConfig(BaseModel):
    """A full saturation sweep over L, beta and Hamiltonian preset"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    system: SystemConfig = Field(default_factory=SystemConfig)
    hamiltonian: HamiltonianConfig = Field(default_factory=HamiltonianConfig)
    betas: List[float] = Field(default_factory=lambda: [0.01, 2.0], description="Inverse temperatures")
    L_values: List[int] = Field(default_factory=lambda: [8, 9, 10], description="Chain lengths")
    master_seed: int = Field(2024, ge=0, lt=2**64, description="Seed all RPTS seeds derive from")
    maximizer: MaximizationConfig = Field(default_factory=MaximizationConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    extended: bool = Field(False, description=f"Allow L up to {EXTENDED_MAX_L} instead of {DESK_MAX_L}")

    @field_validator("betas")
    @classmethod
    def validate_betas(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("betas must not be empty")
        for beta in v:
            if not math.isfinite(beta) or beta < 0.0:
                raise ValueError(f"beta must be finite and non-negative, got {beta}")
        return v

    @field_validator("L_values")
    @classmethod
    def validate_L_values(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("L_values must not be empty")
        if len(set(v)) != len(v):
            raise ValueError("L_values must not repeat")
        return v

    @model_validator(mode="after")
    def check_sweep(self) -> "ExperimentConfig":
        if self.system.statistics != Statistics.FERMIONIC:
            raise ValueError("sweeps run the spinless fermion chain; statistics must be fermionic")
        cap = EXTENDED_MAX_L if self.extended else DESK_MAX_L
        for L in self.L_values:
            if L < self.system.M:
                raise ValueError(f"L={L} is smaller than the subsystem size M={self.system.M}")
            if self.system.n > L:
                raise ValueError(f"n={self.system.n} particles do not fit on L={L} sites")
            if L > cap:
                hint = "" if self.extended else " (pass --extended for up to 13)"
                raise ValueError(f"L={L} exceeds the sweep cap of {cap}{hint}")
        return self

    @classmethod
    def from_json_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Load a sweep description from one JSON document"""
        src = Path(path)
        try:
            text = src.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {src}: {exc}") from exc
        try:
            config = cls.model_validate_json(text)
        except ValidationError as exc:
            raise ConfigError(f"{src}: {describe_validation_error(exc)}") from exc
        logger.info(f"Loaded experiment config from {src}")
        logger.debug(f"Config: {config.model_dump(mode='json')}")
        return config

    def with_overrides(self, overrides: Dict[str, Any]) -> "ExperimentConfig":
        """Copy with dotted-path overrides applied (``"system.M": 5``); None values are skipped"""
        data = json.loads(self.model_dump_json())
        for key, value in overrides.items():
            if value is None:
                continue
            *parents, leaf = key.split(".")
            node = data
            for part in parents:
                if not isinstance(node.get(part), dict):
                    raise ConfigError(f"unknown config section {part!r} in override {key!r}")
                node = node[part]
            if leaf not in node:
                raise ConfigError(f"unknown config field {key!r}")
            node[leaf] = value
        try:
            return type(self).model_validate(data)
        except ValidationError as exc:
            raise ConfigError(describe_validation_error(exc)) from exc

    def output_directory(self, settings: Optional[Settings] = None) -> Path:
        if self.output.directory is not None:
            return self.output.directory
        return (settings or Settings()).output_dir
