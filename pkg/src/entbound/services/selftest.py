"""Oracle suites behind the ``selftest`` subcommand"""
import math
from typing import Callable, List

import numpy as np
from loguru import logger

from entbound.models.base import Boundary, Preset, Statistics, Subsystem
from entbound.models.hamiltonian import HamiltonianParams
from entbound.models.states import StateVector
from entbound.models.system import SystemSpec
from entbound.services import oracles
from entbound.services.entanglement_measures import BlockEntropyEvaluator, entanglement_entropy
from entbound.services.fock_basis import build_basis
from entbound.services.lattice_hamiltonian import build_hamiltonian
from entbound.services.oracles import OracleCheck
from entbound.services.quantum_states import max_entangled_state
from entbound.services.sector_combinatorics import bound_vector, closed_system_bound

PUBLISHED_VECTORS = [
    (Statistics.FERMIONIC, 10, 5, list(range(1, 10)), [0.7, 1.4, 2.1, 2.8, 3.5, 2.8, 2.1, 1.4, 0.7]),
    (Statistics.BOSONIC, 4, 4, [1, 2, 4], [1.6, 2.2, 0.0]),
    (Statistics.BOSONIC, 6, 6, [1, 2, 3, 6], [1.9, 3.0, 3.4, 0.0]),
]


def _random_state(basis, rng: np.random.Generator) -> StateVector:
    amps = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
    return StateVector.normalized(basis, amps)


def check_published_vectors() -> OracleCheck:
    worst = 0.0
    for stats, L, n, Ms, expected in PUBLISHED_VECTORS:
        got = [round(v, 1) for v in bound_vector(L, n, stats, Ms)]
        worst = max(worst, max(abs(g - e) for g, e in zip(got, expected)))
    return OracleCheck("published bound vectors", worst <= 0.05, f"max deviation {worst:.3f}")


def check_bound_counts(max_L: int = 8, max_bosons: int = 4) -> OracleCheck:
    failures = []
    for L in range(1, max_L + 1):
        for M in range(1, L + 1):
            for n in range(0, L + 1):
                spec = SystemSpec(L=L, M=M, n=n)
                if closed_system_bound(spec) != _ln_count(oracles.brute_force_bound_count(spec)):
                    failures.append(spec.label())
    for L in range(1, min(max_L, 5) + 1):
        for M in range(1, L + 1):
            for n in range(0, max_bosons + 1):
                spec = SystemSpec(L=L, M=M, n=n, statistics=Statistics.BOSONIC)
                if closed_system_bound(spec) != _ln_count(oracles.brute_force_bound_count(spec)):
                    failures.append(spec.label())
    return OracleCheck("closed-system bound vs brute force", not failures, ", ".join(failures[:5]) or "ok")


def _ln_count(count: int) -> float:
    return 0.0 if count <= 1 else math.log(count)


def check_hamiltonians(max_L: int = 6, seed: int = 7) -> OracleCheck:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for L in range(1, max_L + 1):
        for boundary in Boundary:
            params_list = [
                HamiltonianParams.from_preset(Preset.NONINTEGRABLE, boundary),
                HamiltonianParams(
                    t=rng.normal(), t_prime=rng.normal(), V=rng.normal(), V_prime=rng.normal(),
                    boundary=boundary,
                ),
            ]
            for params in params_list:
                H_full = oracles.full_space_hamiltonian(L, params)
                for n in range(0, L + 1):
                    basis = build_basis(L, 1, n)
                    sector = build_hamiltonian(basis, params).elements
                    worst = max(worst, float(np.max(np.abs(sector - oracles.project(H_full, basis)))))
    return OracleCheck("sector Hamiltonian vs Jordan-Wigner projection", worst <= 1e-12, f"max |dH| {worst:.2e}")


def entropy_routes(state: StateVector, evaluator: BlockEntropyEvaluator) -> List[float]:
    """S_ent by the smaller Gram matrix, by rho_A, by rho_B and by the block evaluator"""
    return [
        entanglement_entropy(state),
        entanglement_entropy(state, Subsystem.A),
        entanglement_entropy(state, Subsystem.B),
        evaluator.entropy(state.amplitudes),
    ]


def check_entropies(max_L: int = 6, states_per_case: int = 50, seed: int = 11) -> OracleCheck:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for L in range(1, max_L + 1):
        for M in range(1, L + 1):
            for n in range(0, L + 1):
                basis = build_basis(L, M, n)
                evaluator = BlockEntropyEvaluator(basis, np.eye(basis.dim))
                for _ in range(states_per_case):
                    state = _random_state(basis, rng)
                    reference = oracles.partial_trace_entropy(state)
                    for value in entropy_routes(state, evaluator):
                        worst = max(worst, abs(value - reference))
    return OracleCheck("sector entropy vs full partial trace", worst <= 1e-10, f"max |dS| {worst:.2e}")


def check_saturation(max_L: int = 8) -> OracleCheck:
    worst = 0.0
    for L in range(1, max_L + 1):
        for M in range(1, L + 1):
            for n in range(0, L + 1):
                basis = build_basis(L, M, n)
                gap = abs(entanglement_entropy(max_entangled_state(basis)) - closed_system_bound(basis.spec))
                worst = max(worst, gap)
    return OracleCheck("maximally entangled state saturates bound", worst <= 1e-10, f"max gap {worst:.2e}")


SUITES: List[Callable[[], OracleCheck]] = [
    check_published_vectors,
    check_bound_counts,
    check_hamiltonians,
    check_entropies,
    check_saturation,
]


def run_selftest() -> List[OracleCheck]:
    results = []
    for suite in SUITES:
        check = suite()
        log = logger.info if check.passed else logger.error
        log(f"{'PASS' if check.passed else 'FAIL'} {check.name}: {check.detail}")
        results.append(check)
    return results
