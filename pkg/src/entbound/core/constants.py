"""Numeric tolerances, presets and file-format constants"""
import math

LN2 = math.log(2.0)

# unit-norm contract for every StateVector
NORM_TOL = 1e-12
# relative residual and orthonormality contract of the eigensolver
EIGEN_RESIDUAL_TOL = 1e-10
# eigenvalues in [EIGENVALUE_CLAMP, 0) are roundoff
EIGENVALUE_CLAMP = -1e-12
# |dE| <= DEGENERACY_TOL * max|E| puts two eigenvalues into one phase group
DEGENERACY_TOL = 1e-10
# numerical slack when comparing entropies against the closed-system bound
BOUND_SLACK = 1e-9

MAX_BASIS_WIDTH = 30
MAX_PHASE_DIMENSION = 400

DEFAULT_RESTARTS = 3
MAX_RESTARTS = 10
SATURATION_GAP = 0.02
SIMPLEX_OFFSET = 0.5

DESK_MAX_L = 11
EXTENDED_MAX_L = 13

CSV_SCHEMA_VERSION = 1
CSV_SIG_DIGITS = 12
SWEEP_COLUMNS = [
    "L",
    "M",
    "n",
    "beta",
    "preset",
    "boundary",
    "mean_max_entropy_nats",
    "std_dev",
    "bound_nats",
    "mean_nA_at_max",
    "seeds",
    "error",
]

ENV_PREFIX = "ENTBOUND_"
