"""t-t'-V-V' spinless fermion chain in a fixed-n sector, and exact diagonalization.

Jordan-Wigner strings run over sites 1..L in order, so c_i^dag c_j between the ordered
pair (min, max) carries (-1)^(occupied sites strictly between them), whichever side the
wrap-around puts them on.
"""
from pathlib import Path
from typing import Iterator, List, Tuple, Union

import numpy as np
import pandas as pd
import scipy.linalg
from loguru import logger

from entbound.core.constants import EIGEN_RESIDUAL_TOL
from entbound.core.errors import DiagonalizationError, DimensionMismatchError
from entbound.models.base import Boundary
from entbound.models.basis import SectorBasis
from entbound.models.hamiltonian import HamiltonianMatrix, HamiltonianParams, SpectralData


def bonds(L: int, distance: int, boundary: Boundary) -> List[Tuple[int, int]]:
    """0-based site pairs (i, i + distance) entering the sum over i.

    Open chains keep pairs inside the chain; periodic chains take every i = 0..L-1 with the
    partner mod L, skipping pairs that fold onto a single site.
    """
    if Boundary(boundary) == Boundary.OPEN:
        return [(i, i + distance) for i in range(L - distance)]
    pairs = []
    for i in range(L):
        j = (i + distance) % L
        if j != i:
            pairs.append((i, j))
    return pairs


def hop_sign(state: int, i: int, j: int) -> int:
    """Fermionic sign of moving a particle between sites i and j (0-based) in ``state``"""
    lo, hi = (i, j) if i < j else (j, i)
    between = (state >> (lo + 1)) & ((1 << (hi - lo - 1)) - 1)
    return -1 if between.bit_count() & 1 else 1


def diagonal_energy(state: int, L: int, params: HamiltonianParams) -> float:
    energy = 0.0
    for coupling, distance in ((params.V, 1), (params.V_prime, 2)):
        if coupling == 0.0:
            continue
        for i, j in bonds(L, distance, params.boundary):
            if state >> i & 1 and state >> j & 1:
                energy += coupling
    return energy


def _hops(state: int, L: int, params: HamiltonianParams) -> Iterator[Tuple[int, float]]:
    """(target state, amplitude) for every hopping term acting on ``state``"""
    for amplitude, distance in ((params.t, 1), (params.t_prime, 2)):
        if amplitude == 0.0:
            continue
        for i, j in bonds(L, distance, params.boundary):
            occ_i, occ_j = state >> i & 1, state >> j & 1
            if occ_i == occ_j:
                continue
            target = state ^ (1 << i) ^ (1 << j)
            yield target, -amplitude * hop_sign(state, i, j)


def build_hamiltonian(basis: SectorBasis, params: HamiltonianParams) -> HamiltonianMatrix:
    """Dense sector matrix of the chain Hamiltonian"""
    dim = basis.dim
    H = np.zeros((dim, dim), dtype=float)
    for col, state in enumerate(basis.states.tolist()):
        H[col, col] = diagonal_energy(state, basis.L, params)
        for target, amplitude in _hops(state, basis.L, params):
            H[basis.index_of(target), col] += amplitude
    # each hop is visited from both endpoints with equal amplitude, so H is exactly symmetric
    if not np.array_equal(H, H.T):
        raise DiagonalizationError("assembled Hamiltonian is not symmetric", {"dim": dim})
    logger.debug(
        f"Hamiltonian {params.preset.value} ({params.boundary.value}) dim={dim} "
        f"nnz={int(np.count_nonzero(H))}"
    )
    return HamiltonianMatrix(basis=basis, params=params, elements=H)


def diagonalize(H: HamiltonianMatrix) -> SpectralData:
    """Full spectrum via LAPACK syevr, checked against the residual contract"""
    A = H.elements
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"Hamiltonian must be square, got shape {A.shape}")
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(A, driver="evr")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise DiagonalizationError(
            "dense symmetric eigensolver failed to converge",
            {"dim": A.shape[0], "lapack": str(exc)},
        ) from exc

    norm = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    scale = max(norm, 1.0)
    residual = float(np.max(np.linalg.norm(A @ eigenvectors - eigenvectors * eigenvalues, axis=0), initial=0.0))
    ortho = float(np.max(np.abs(eigenvectors.T @ eigenvectors - np.eye(A.shape[0])), initial=0.0))
    if residual > EIGEN_RESIDUAL_TOL * scale or ortho > EIGEN_RESIDUAL_TOL:
        raise DiagonalizationError(
            "eigendecomposition violates its accuracy contract",
            {"dim": A.shape[0], "residual": residual, "orthonormality": ortho, "norm": norm},
        )
    logger.debug(
        f"diagonalized dim={A.shape[0]}: E in [{eigenvalues[0]:.6g}, {eigenvalues[-1]:.6g}], "
        f"residual={residual:.2e}, ortho={ortho:.2e}"
    )
    for arr in (eigenvalues, eigenvectors):
        arr.setflags(write=False)
    return SpectralData(
        basis=H.basis, eigenvalues=eigenvalues, eigenvectors=eigenvectors, operator_norm=norm
    )


def dump_matrix(H: HamiltonianMatrix, path: Union[str, Path]) -> Path:
    """Write non-zero elements as row,col,value CSV triples"""
    rows, cols = np.nonzero(H.elements)
    frame = pd.DataFrame({"row": rows, "col": cols, "value": H.elements[rows, cols]})
    out = Path(path)
    frame.to_csv(out, index=False, float_format="%.17g")
    logger.info(f"Wrote {len(frame)} matrix elements to {out}")
    return out
