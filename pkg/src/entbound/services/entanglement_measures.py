"""Entanglement entropy from the sector-block structure of rho_A.

Particle-number conservation makes rho_A block diagonal in nA, so its spectrum is the
union of the squared singular values of the per-sector coefficient matrices C_nA. Each
block is diagonalized through the smaller of the Gram matrices C C^dag and C^dag C.
"""
from typing import Dict, List, Optional

import numpy as np

from entbound.core.constants import EIGENVALUE_CLAMP
from entbound.core.errors import DomainError, NegativeEigenvalueError
from entbound.models.base import Subsystem, Verdict
from entbound.models.basis import SectorBasis
from entbound.models.metrics import SectorSchmidt, SectorSpectrum
from entbound.models.states import StateVector
from entbound.models.system import NumberDistribution
from entbound.services.sector_combinatorics import max_ent_number_distribution


def clamp_spectrum(values: np.ndarray) -> np.ndarray:
    """Zero out roundoff negatives; anything below the clamp is a bug upstream"""
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < EIGENVALUE_CLAMP:
        raise NegativeEigenvalueError(
            "reduced density matrix has a negative eigenvalue", {"min": float(values.min())}
        )
    return np.where(values < 0.0, 0.0, values)


def block_spectrum(C: np.ndarray, side: Optional[Subsystem] = None) -> np.ndarray:
    """Eigenvalues of C C^dag (side A) or C^dag C (side B), descending and clamped"""
    if side is None:
        side = Subsystem.A if C.shape[0] <= C.shape[1] else Subsystem.B
    gram = C @ C.conj().T if side == Subsystem.A else C.conj().T @ C
    values = np.linalg.eigvalsh(gram)[::-1]
    return clamp_spectrum(values)


def von_neumann_entropy(spectrum: np.ndarray) -> float:
    """-sum lambda ln lambda with 0 ln 0 = 0"""
    spectrum = np.asarray(spectrum, dtype=float)
    positive = spectrum[spectrum > 0.0]
    if positive.size == 0:
        return 0.0
    return float(-np.sum(positive * np.log(positive)))


def renyi_from_spectrum(spectrum: np.ndarray, alpha: float) -> float:
    if alpha <= 0.0:
        raise DomainError(f"Renyi order must be positive, got alpha={alpha}")
    if alpha == 1.0:
        raise DomainError("alpha = 1 is the von Neumann entropy; use entanglement_entropy")
    spectrum = np.asarray(spectrum, dtype=float)
    positive = spectrum[spectrum > 0.0]
    if positive.size == 0:
        return 0.0
    return float(np.log(np.sum(positive**alpha)) / (1.0 - alpha))


def sector_schmidt(state: StateVector, side: Optional[Subsystem] = None) -> SectorSchmidt:
    """Per-sector weight and Schmidt spectrum of the state"""
    sectors: List[SectorSpectrum] = []
    for n_a, layout in sorted(state.basis.sectors.items()):
        C = layout.coefficient_matrix(state.amplitudes)
        values = block_spectrum(C, side)
        sectors.append(
            SectorSpectrum(
                n_a=n_a,
                weight=float(np.vdot(C, C).real),
                eigenvalues=values.tolist(),
            )
        )
    return SectorSchmidt(sectors=sectors)


def entanglement_entropy(state: StateVector, side: Optional[Subsystem] = None) -> float:
    """von Neumann entropy of rho_A (or rho_B when ``side`` is B), in nats"""
    return von_neumann_entropy(sector_schmidt(state, side).spectrum)


def renyi_entropy(state: StateVector, alpha: float) -> float:
    """(1/(1-alpha)) ln tr rho_A^alpha"""
    return renyi_from_spectrum(sector_schmidt(state).spectrum, alpha)


def sector_weights(basis: SectorBasis, amplitudes: np.ndarray) -> Dict[int, float]:
    probs = np.abs(amplitudes) ** 2
    return {
        n_a: float(probs[layout.positions].sum()) for n_a, layout in sorted(basis.sectors.items())
    }


def number_distribution(state: StateVector) -> NumberDistribution:
    """Probability of nA particles in A, and its mean"""
    weights = sector_weights(state.basis, state.amplitudes)
    mean = sum(n_a * p for n_a, p in weights.items())
    return NumberDistribution(probabilities=list(weights.items()), mean=mean)


def max_entanglement_test(state: StateVector, tolerance: float = 1e-6) -> Verdict:
    """Necessary condition only: a state whose nA statistics differ from d_nA / sum d
    by more than ``tolerance`` in total variation cannot be maximally entangled.
    Passing the test does not make a state maximally entangled.
    """
    expected = max_ent_number_distribution(state.basis.spec)
    distance = number_distribution(state).total_variation(expected)
    return Verdict.RULED_OUT if distance > tolerance else Verdict.POSSIBLE


class BlockEntropyEvaluator:
    """Fast S_ent for many states sharing one basis and one eigenbasis.

    The rows of the eigenvector matrix are regrouped per sector in coefficient-matrix
    order, so a state given by its eigenbasis coefficients w maps to the block
    C_nA = (V_nA @ w).reshape(dim_a, dim_b) with one matvec per sector.
    """

    def __init__(self, basis: SectorBasis, eigenvectors: np.ndarray):
        self.basis = basis
        self._blocks = [
            (layout.dim_a, layout.dim_b, np.ascontiguousarray(eigenvectors[layout.positions]))
            for _, layout in sorted(basis.sectors.items())
        ]

    def spectrum(self, coefficients: np.ndarray) -> np.ndarray:
        parts = []
        for dim_a, dim_b, rows in self._blocks:
            C = (rows @ coefficients).reshape(dim_a, dim_b)
            parts.append(block_spectrum(C))
        return np.concatenate(parts)

    def entropy(self, coefficients: np.ndarray) -> float:
        return von_neumann_entropy(self.spectrum(coefficients))

    def number_mean(self, coefficients: np.ndarray) -> float:
        mean = 0.0
        for (n_a, _), (_, _, rows) in zip(sorted(self.basis.sectors.items()), self._blocks):
            mean += n_a * float(np.sum(np.abs(rows @ coefficients) ** 2))
        return mean
