import numpy as np
import pytest

from entbound.models.base import Boundary, Preset
from entbound.models.hamiltonian import HamiltonianParams
from entbound.models.states import StateVector
from entbound.services.fock_basis import build_basis
from entbound.services.lattice_hamiltonian import build_hamiltonian, diagonalize


def random_state(basis, rng: np.random.Generator) -> StateVector:
    amps = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
    return StateVector.normalized(basis, amps)


def spectrum_for(L: int, M: int, n: int, preset: Preset = Preset.NONINTEGRABLE, boundary=Boundary.OPEN):
    basis = build_basis(L, M, n)
    params = HamiltonianParams.from_preset(preset, boundary)
    return diagonalize(build_hamiltonian(basis, params))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def basis_632():
    """L=6, M=3, n=2: the six-site example with bound ln 5"""
    return build_basis(6, 3, 2)


@pytest.fixture
def spectral_632():
    return spectrum_for(6, 3, 2)


@pytest.fixture
def free_spectral_42():
    """L=4, n=2 with t=1 only: free fermions, one exactly degenerate pair at E=0"""
    basis = build_basis(4, 2, 2)
    return diagonalize(build_hamiltonian(basis, HamiltonianParams(t=1.0)))
