"""Random pure thermal states, their unitary evolution, and maximally entangled states"""
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from loguru import logger

from entbound.core.constants import DEGENERACY_TOL
from entbound.core.errors import DimensionMismatchError, ThermalStateError
from entbound.models.basis import SectorBasis
from entbound.models.hamiltonian import SpectralData
from entbound.models.states import StateProvenance, StateVector, ThermalEnsembleSpec
from entbound.services.sector_combinatorics import sector_table


def _check_basis(state: StateVector, spectral: SpectralData) -> None:
    if not state.basis.same_shape(spectral.basis):
        raise DimensionMismatchError(
            f"state lives in L={state.basis.L} M={state.basis.M} n={state.basis.n}, "
            f"spectrum in L={spectral.basis.L} M={spectral.basis.M} n={spectral.basis.n}"
        )


def phase_groups(spectral: SpectralData, tol: float = DEGENERACY_TOL) -> Tuple[np.ndarray, int]:
    """Group label per eigenvalue; neighbours closer than tol * max|E| share a label"""
    E = spectral.eigenvalues
    scale = spectral.operator_norm
    if E.size == 0:
        return np.zeros(0, dtype=np.int64), 0
    gaps = np.diff(E)
    new_group = gaps > tol * scale if scale > 0 else np.zeros(gaps.size, dtype=bool)
    labels = np.concatenate([[0], np.cumsum(new_group)]).astype(np.int64)
    return labels, int(labels[-1]) + 1


def group_energies(spectral: SpectralData) -> np.ndarray:
    """Mean eigenvalue of each phase group"""
    labels, count = phase_groups(spectral)
    return np.bincount(labels, weights=spectral.eigenvalues, minlength=count) / np.bincount(
        labels, minlength=count
    )


def eigen_coefficients(state: StateVector, spectral: SpectralData) -> np.ndarray:
    """<E|psi> for every eigenvector"""
    _check_basis(state, spectral)
    return spectral.eigenvectors.T @ state.amplitudes


def from_eigen_coefficients(
    spectral: SpectralData, coefficients: np.ndarray, provenance: StateProvenance
) -> StateVector:
    return StateVector(
        basis=spectral.basis,
        amplitudes=spectral.eigenvectors @ coefficients,
        provenance=provenance,
    )


def random_pure_thermal_state(spec: ThermalEnsembleSpec) -> StateVector:
    """(1/sqrt Z) sum_E c_E exp(-beta E / 2) |E> with c_E = (x + i y)/sqrt 2, x, y ~ N(0, 1).

    numpy's PCG64 generator seeded with ``spec.seed`` drives the ziggurat normal sampler:
    first all x_E, then all y_E, in ascending energy order. Energies are shifted by E_min
    before exponentiation; the shift cancels in Z.
    """
    spectral = spec.spectral
    rng = np.random.default_rng(spec.seed)
    x = rng.standard_normal(spectral.dim)
    y = rng.standard_normal(spectral.dim)
    c = (x + 1j * y) / np.sqrt(2.0)
    shifted = spectral.eigenvalues - spectral.eigenvalues[0]
    w = c * np.exp(-0.5 * spec.beta * shifted)
    Z = float(np.sum(np.abs(w) ** 2))
    if not np.isfinite(Z) or Z <= 0.0:
        raise ThermalStateError(
            "Boltzmann weights vanished for every eigenvalue",
            {"beta": spec.beta, "seed": spec.seed, "Z": Z},
        )
    logger.debug(f"RPTS seed={spec.seed} beta={spec.beta} dim={spectral.dim} Z={Z:.6g}")
    return from_eigen_coefficients(
        spectral, w / np.sqrt(Z), StateProvenance(kind="rpts", seed=spec.seed, beta=spec.beta)
    )


def evolve(state: StateVector, spectral: SpectralData, tau: float) -> StateVector:
    """exp(-i H tau) |psi> through the eigenbasis"""
    w = eigen_coefficients(state, spectral) * np.exp(-1j * spectral.eigenvalues * tau)
    provenance = state.provenance.model_copy(update={"kind": "evolved", "tau": tau})
    return from_eigen_coefficients(spectral, w, provenance)


def phase_state(state: StateVector, spectral: SpectralData, phases: np.ndarray) -> StateVector:
    """Multiply each eigencomponent by exp(-i phi_g) of its degeneracy group g"""
    labels, count = phase_groups(spectral)
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (count,):
        raise DimensionMismatchError(
            f"expected {count} phases (one per distinct eigenvalue), got shape {phases.shape}"
        )
    w = eigen_coefficients(state, spectral) * np.exp(-1j * phases[labels])
    provenance = state.provenance.model_copy(update={"kind": "phased"})
    return from_eigen_coefficients(spectral, w, provenance)


def energy_expectation(state: StateVector, spectral: SpectralData) -> float:
    w = eigen_coefficients(state, spectral)
    return float(np.sum(np.abs(w) ** 2 * spectral.eigenvalues))


def max_entangled_state(basis: SectorBasis) -> StateVector:
    """Equal-weight state pairing the k-th A configuration with the k-th B configuration.

    In each sector the first d_nA ranks are paired, so rho_A has sum(d) eigenvalues equal
    to 1 / sum(d).
    """
    table = sector_table(basis.spec)
    total = table.total
    amps = np.zeros(basis.dim, dtype=complex)
    for row in table.entries:
        layout = basis.sectors[row.n_a]
        for k in range(row.d):
            amps[layout.positions[k * layout.dim_b + k]] = 1.0 / np.sqrt(total)
    return StateVector(basis=basis, amplitudes=amps, provenance=StateProvenance(kind="max_entangled"))


def dump_state(state: StateVector, path: Union[str, Path]) -> Path:
    """Text dump: '# L M n' then 'index real imag' rows"""
    out = Path(path)
    index = np.arange(state.basis.dim)
    rows = np.column_stack([index, state.amplitudes.real, state.amplitudes.imag])
    np.savetxt(
        out,
        rows,
        fmt=["%d", "%.17g", "%.17g"],
        header=f"{state.basis.L} {state.basis.M} {state.basis.n}",
        comments="# ",
    )
    logger.info(f"Wrote state ({state.basis.dim} amplitudes) to {out}")
    return out


def load_state(path: Union[str, Path], basis: SectorBasis) -> StateVector:
    src = Path(path)
    with src.open() as fh:
        header = fh.readline().lstrip("#").split()
    if [int(v) for v in header] != [basis.L, basis.M, basis.n]:
        raise DimensionMismatchError(
            f"{src} holds an L M n = {' '.join(header)} state, basis is {basis.L} {basis.M} {basis.n}"
        )
    rows = np.loadtxt(src, comments="#", ndmin=2)
    amps = np.zeros(basis.dim, dtype=complex)
    amps[rows[:, 0].astype(np.int64)] = rows[:, 1] + 1j * rows[:, 2]
    return StateVector(basis=basis, amplitudes=amps, provenance=StateProvenance(kind="loaded"))
