"""Independent reference computations used to cross-check the sector-based code.

Everything here works in the full 2^L Fock space or by brute-force enumeration, so it
shares no indexing logic with fock_basis or entanglement_measures.
"""
import itertools
import math
from functools import reduce
from typing import List, NamedTuple

import numpy as np
from loguru import logger

from entbound.models.base import Boundary, Statistics
from entbound.models.basis import SectorBasis
from entbound.models.hamiltonian import HamiltonianParams
from entbound.models.states import StateVector
from entbound.models.system import SystemSpec

_ANNIHILATE = np.array([[0.0, 1.0], [0.0, 0.0]])
_PARITY = np.diag([1.0, -1.0])
_IDENTITY = np.eye(2)


def brute_force_bound_count(spec: SystemSpec) -> int:
    """sum over nA of min(#distinct A configurations, #distinct B configurations)"""
    a_configs: dict = {}
    b_configs: dict = {}
    for occupation in _occupations(spec):
        a_part, b_part = occupation[: spec.M], occupation[spec.M :]
        n_a = sum(a_part)
        a_configs.setdefault(n_a, set()).add(a_part)
        b_configs.setdefault(n_a, set()).add(b_part)
    return sum(min(len(a_configs[k]), len(b_configs[k])) for k in a_configs)


def _occupations(spec: SystemSpec):
    if spec.statistics == Statistics.FERMIONIC:
        for sites in itertools.combinations(range(spec.L), spec.n):
            occ = [0] * spec.L
            for s in sites:
                occ[s] = 1
            yield tuple(occ)
    else:
        for sites in itertools.combinations_with_replacement(range(spec.L), spec.n):
            occ = [0] * spec.L
            for s in sites:
                occ[s] += 1
            yield tuple(occ)


def annihilators(L: int) -> List[np.ndarray]:
    """Jordan-Wigner c_i on 2^L states; basis index = occupation bitmask, site i = bit i"""
    ops = []
    for i in range(L):
        # kron factors run from the highest bit to bit 0
        factors = [
            _IDENTITY if k > i else (_ANNIHILATE if k == i else _PARITY) for k in reversed(range(L))
        ]
        ops.append(reduce(np.kron, factors))
    return ops


def full_space_hamiltonian(L: int, params: HamiltonianParams) -> np.ndarray:
    c = annihilators(L)
    num = [ci.T @ ci for ci in c]
    H = np.zeros((2**L, 2**L))
    terms = ((params.t, params.V, 1), (params.t_prime, params.V_prime, 2))
    for hop, interaction, distance in terms:
        if Boundary(params.boundary) == Boundary.OPEN:
            pairs = [(i, i + distance) for i in range(L - distance)]
        else:
            pairs = [(i, (i + distance) % L) for i in range(L) if (i + distance) % L != i]
        for i, j in pairs:
            H += -hop * (c[i].T @ c[j] + c[j].T @ c[i]) + interaction * num[i] @ num[j]
    return H


def number_operator(L: int) -> np.ndarray:
    return sum(ci.T @ ci for ci in annihilators(L))


def project(H_full: np.ndarray, basis: SectorBasis) -> np.ndarray:
    idx = basis.states
    return H_full[np.ix_(idx, idx)]


def embed(state: StateVector) -> np.ndarray:
    full = np.zeros(2**state.basis.L, dtype=complex)
    full[state.basis.states] = state.amplitudes
    return full


def partial_trace_spectrum(state: StateVector) -> np.ndarray:
    """Eigenvalues of rho_A from the full-space vector, B traced out index by index"""
    L, M = state.basis.L, state.basis.M
    psi = embed(state).reshape(2 ** (L - M), 2**M)
    rho_a = np.einsum("ba,bc->ac", psi, psi.conj())
    return np.clip(np.linalg.eigvalsh(rho_a), 0.0, None)


def partial_trace_entropy(state: StateVector) -> float:
    p = partial_trace_spectrum(state)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Cyclic Jacobi rotations on a symmetric matrix; ascending eigenvalues"""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    scale = max(np.linalg.norm(A), 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(max(np.sum(A**2) - np.sum(np.diag(A) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                cs = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * cs
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = cs
                rot[p, q], rot[q, p] = sn, -sn
                A = rot.T @ A @ rot
    else:
        logger.warning(f"Jacobi oracle hit the sweep limit ({max_sweeps}) for n={n}")
    return np.sort(np.diag(A))


class OracleCheck(NamedTuple):
    name: str
    passed: bool
    detail: str
