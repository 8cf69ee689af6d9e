import numpy as np
import pytest

from entbound.models.base import Statistics
from entbound.models.states import StateVector
from entbound.services import oracles, selftest
from entbound.services.fock_basis import build_basis


def test_full_selftest_passes():
    results = selftest.run_selftest()
    assert len(results) == len(selftest.SUITES)
    for check in results:
        assert check.passed, f"{check.name}: {check.detail}"


@pytest.mark.parametrize(
    "suite, kwargs",
    [
        (selftest.check_bound_counts, {"max_L": 4, "max_bosons": 2}),
        (selftest.check_hamiltonians, {"max_L": 3}),
        (selftest.check_entropies, {"max_L": 4, "states_per_case": 2}),
        (selftest.check_saturation, {"max_L": 5}),
    ],
)
def test_suites_accept_smaller_sizes(suite, kwargs):
    assert suite(**kwargs).passed


def test_wrong_reference_vector_fails(monkeypatch):
    monkeypatch.setattr(
        selftest,
        "PUBLISHED_VECTORS",
        [(Statistics.BOSONIC, 4, 4, [1, 2, 4], [1.6, 2.5, 0.0])],
    )
    check = selftest.check_published_vectors()
    assert not check.passed
    assert "0.300" in check.detail


def test_jacobi_oracle_on_a_known_matrix():
    A = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]])
    expected = [2.0 - np.sqrt(2.0), 2.0, 2.0 + np.sqrt(2.0)]
    np.testing.assert_allclose(oracles.jacobi_eigenvalues(A), expected, atol=1e-12)


def test_full_space_number_operator_is_diagonal_popcount():
    N = oracles.number_operator(4)
    assert np.array_equal(np.diag(N), [bin(i).count("1") for i in range(16)])
    assert np.count_nonzero(N - np.diag(np.diag(N))) == 0


def test_embed_places_amplitudes_at_their_masks():
    basis = build_basis(4, 2, 2)
    amps = np.zeros(basis.dim, dtype=complex)
    amps[basis.index_of(0b1001)] = 1.0
    full = oracles.embed(StateVector(basis=basis, amplitudes=amps))
    assert full.shape == (16,)
    assert full[0b1001] == 1.0
    assert np.count_nonzero(full) == 1
