"""Base enums for entbound"""
from enum import Enum


class Statistics(str, Enum):
    """Particle statistics of the lattice gas"""
    FERMIONIC = "fermionic"
    BOSONIC = "bosonic"


class Boundary(str, Enum):
    """Lattice boundary condition"""
    OPEN = "open"
    PERIODIC = "periodic"


class Subsystem(str, Enum):
    """Side of the bipartition"""
    A = "A"
    B = "B"


class Preset(str, Enum):
    """Named coupling sets for the t-t'-V-V' chain"""
    NONINTEGRABLE = "nonintegrable"
    NN_HOPPING_ONLY = "nn_hopping_only"
    INTERACTION_ONLY = "interaction_only"
    INTEGRABLE = "integrable"
    CUSTOM = "custom"


class MaximizationMode(str, Enum):
    """Search strategy for max over tau of S_ent"""
    PHASE_SIMPLEX = "phase_simplex"
    TIME_SCAN = "time_scan"


class Verdict(str, Enum):
    """Outcome of the number-statistics test for maximal entanglement"""
    POSSIBLE = "possible"
    RULED_OUT = "ruled_out"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"
