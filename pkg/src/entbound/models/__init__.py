"""entbound domain models"""
from entbound.models.base import (
    Boundary,
    MaximizationMode,
    OutputFormat,
    Preset,
    Statistics,
    Subsystem,
    Verdict,
)
from entbound.models.basis import SectorBasis, SectorLayout
from entbound.models.hamiltonian import HamiltonianMatrix, HamiltonianParams, SpectralData
from entbound.models.metrics import (
    MaximizationConfig,
    MaximizationResult,
    SectorSchmidt,
    SectorSpectrum,
    SeedOutcome,
    TimeScanResult,
)
from entbound.models.states import StateProvenance, StateVector, ThermalEnsembleSpec
from entbound.models.sweep import SweepPoint, SweepRow, SweepSummary, SweepTiming
from entbound.models.system import (
    BoundReport,
    EntropyCorollaries,
    NumberDistribution,
    SectorRow,
    SectorTable,
    SystemSpec,
)

__all__ = [
    'Boundary',
    'MaximizationMode',
    'OutputFormat',
    'Preset',
    'Statistics',
    'Subsystem',
    'Verdict',
    'SectorBasis',
    'SectorLayout',
    'HamiltonianMatrix',
    'HamiltonianParams',
    'SpectralData',
    'MaximizationConfig',
    'MaximizationResult',
    'SectorSchmidt',
    'SectorSpectrum',
    'SeedOutcome',
    'TimeScanResult',
    'StateProvenance',
    'StateVector',
    'ThermalEnsembleSpec',
    'SweepPoint',
    'SweepRow',
    'SweepSummary',
    'SweepTiming',
    'BoundReport',
    'EntropyCorollaries',
    'NumberDistribution',
    'SectorRow',
    'SectorTable',
    'SystemSpec',
]
