import numpy as np
import pandas as pd
import pytest

from entbound.core.errors import DiagonalizationError
from entbound.models.base import Boundary, Preset
from entbound.models.hamiltonian import HamiltonianMatrix, HamiltonianParams
from entbound.services import oracles
from entbound.services.fock_basis import build_basis
from entbound.services.lattice_hamiltonian import (
    bonds,
    build_hamiltonian,
    diagonalize,
    dump_matrix,
    hop_sign,
)


def test_single_hop():
    H = build_hamiltonian(build_basis(2, 1, 1), HamiltonianParams(t=1.0))
    assert H.elements.tolist() == [[0.0, -1.0], [-1.0, 0.0]]


def test_interaction_diagonal():
    basis = build_basis(3, 1, 2)
    H = build_hamiltonian(basis, HamiltonianParams(V=0.5))
    assert basis.states.tolist() == [0b011, 0b101, 0b110]
    assert np.diag(H.elements).tolist() == [0.5, 0.0, 0.5]
    assert np.count_nonzero(H.elements - np.diag(np.diag(H.elements))) == 0


def test_matches_full_space_projection():
    params = HamiltonianParams(t=1.0, t_prime=0.5)
    basis = build_basis(4, 2, 2)
    H = build_hamiltonian(basis, params)
    expected = oracles.project(oracles.full_space_hamiltonian(4, params), basis)
    np.testing.assert_allclose(H.elements, expected, atol=1e-14)


@pytest.mark.parametrize("boundary", list(Boundary))
def test_oracle_equivalence_up_to_six_sites(boundary):
    rng = np.random.default_rng(3)
    for L in range(1, 7):
        params = HamiltonianParams(
            t=rng.normal(), t_prime=rng.normal(), V=rng.normal(), V_prime=rng.normal(), boundary=boundary
        )
        H_full = oracles.full_space_hamiltonian(L, params)
        for n in range(0, L + 1):
            basis = build_basis(L, min(2, L), n)
            H = build_hamiltonian(basis, params)
            np.testing.assert_allclose(H.elements, oracles.project(H_full, basis), atol=1e-12)


@pytest.mark.parametrize("boundary", list(Boundary))
def test_full_space_operator_conserves_particle_number(boundary):
    params = HamiltonianParams.from_preset(Preset.NONINTEGRABLE, boundary)
    H_full = oracles.full_space_hamiltonian(5, params)
    N_full = oracles.number_operator(5)
    np.testing.assert_allclose(H_full @ N_full - N_full @ H_full, 0.0, atol=1e-12)


@pytest.mark.parametrize("preset", [p for p in Preset if p != Preset.CUSTOM])
@pytest.mark.parametrize("boundary", list(Boundary))
def test_exactly_symmetric(preset, boundary):
    H = build_hamiltonian(build_basis(7, 3, 3), HamiltonianParams.from_preset(preset, boundary))
    assert np.array_equal(H.elements, H.elements.T)


def test_next_nearest_hop_sign_follows_middle_site():
    basis = build_basis(5, 2, 2)
    H = build_hamiltonian(basis, HamiltonianParams(t_prime=0.7))
    # hop between sites 1 and 3 (bits 0 and 2), site 2 empty then occupied
    empty_middle = H.elements[basis.index_of(0b01100), basis.index_of(0b01001)]
    full_middle = H.elements[basis.index_of(0b00110), basis.index_of(0b00011)]
    assert empty_middle == pytest.approx(-0.7)
    assert full_middle == pytest.approx(0.7)


def test_hop_sign_counts_sites_strictly_between():
    assert hop_sign(0b10110, 0, 4) == 1
    assert hop_sign(0b10100, 1, 4) == -1
    assert hop_sign(0b00011, 0, 1) == 1


def test_periodic_bonds_skip_self_pairs():
    assert bonds(4, 1, Boundary.OPEN) == [(0, 1), (1, 2), (2, 3)]
    assert bonds(4, 1, Boundary.PERIODIC) == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert bonds(2, 2, Boundary.PERIODIC) == []
    assert bonds(1, 1, Boundary.PERIODIC) == []


def test_periodic_wraparound_sign():
    # two fermions on a ring of 4: hopping 4 -> 1 passes the particle on site 2 or 3
    basis = build_basis(4, 2, 2)
    H = build_hamiltonian(basis, HamiltonianParams(t=1.0, boundary=Boundary.PERIODIC))
    assert H.elements[basis.index_of(0b0011), basis.index_of(0b1010)] == pytest.approx(1.0)
    assert H.elements[basis.index_of(0b0101), basis.index_of(0b1100)] == pytest.approx(1.0)


def test_diagonalize_two_level():
    spectral = diagonalize(build_hamiltonian(build_basis(2, 1, 1), HamiltonianParams(t=1.0)))
    np.testing.assert_allclose(spectral.eigenvalues, [-1.0, 1.0], atol=1e-14)
    assert spectral.operator_norm == pytest.approx(1.0)


def test_eigenvalues_match_jacobi_oracle():
    H = build_hamiltonian(build_basis(4, 2, 2), HamiltonianParams(t=1.0))
    spectral = diagonalize(H)
    np.testing.assert_allclose(spectral.eigenvalues, oracles.jacobi_eigenvalues(H.elements), atol=1e-10)
    # free fermions: sums of two distinct single-particle levels -2 cos(k pi / 5)
    levels = -2 * np.cos(np.arange(1, 5) * np.pi / 5)
    pairs = sorted(levels[i] + levels[j] for i in range(4) for j in range(i + 1, 4))
    np.testing.assert_allclose(spectral.eigenvalues, pairs, atol=1e-10)


def test_spectral_contract(spectral_632):
    H = build_hamiltonian(spectral_632.basis, HamiltonianParams.from_preset(Preset.NONINTEGRABLE))
    E, V = spectral_632.eigenvalues, spectral_632.eigenvectors
    assert np.all(np.diff(E) >= 0)
    assert E.sum() == pytest.approx(np.trace(H.elements), rel=1e-9, abs=1e-9)
    assert (E**2).sum() == pytest.approx(np.sum(H.elements**2), rel=1e-9)
    assert np.max(np.abs(V.T @ V - np.eye(V.shape[0]))) <= 1e-10
    residual = np.linalg.norm(H.elements @ V - V * E, axis=0).max()
    assert residual <= 1e-10 * max(spectral_632.operator_norm, 1.0)


def test_diagonalize_rejects_non_finite_matrix():
    basis = build_basis(2, 1, 1)
    H = HamiltonianMatrix(basis=basis, params=HamiltonianParams(), elements=np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(DiagonalizationError):
        diagonalize(H)


def test_presets():
    p = HamiltonianParams.from_preset("nonintegrable")
    assert (p.t, p.t_prime, p.V, p.V_prime) == (1.9, 1.9, 0.5, 0.5)
    assert HamiltonianParams.from_preset(Preset.INTERACTION_ONLY).has_hopping is False
    q = HamiltonianParams.from_preset(Preset.INTEGRABLE)
    assert (q.t, q.t_prime, q.V, q.V_prime) == (1.9, 0.0, 0.5, 0.0)


def test_rejects_non_finite_couplings():
    with pytest.raises(ValueError):
        HamiltonianParams(t=float("inf"))


def test_dump_matrix(tmp_path):
    H = build_hamiltonian(build_basis(4, 2, 2), HamiltonianParams(t=1.0, V=0.5))
    out = dump_matrix(H, tmp_path / "h.csv")
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["row", "col", "value"]
    assert len(frame) == np.count_nonzero(H.elements)
    rebuilt = np.zeros_like(H.elements)
    rebuilt[frame["row"], frame["col"]] = frame["value"]
    np.testing.assert_array_equal(rebuilt, H.elements)
