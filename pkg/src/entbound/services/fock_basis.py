"""Fixed particle-number occupation basis and its A|B sector indexing"""
import math
from typing import Dict, List

import numpy as np
from loguru import logger

from entbound.core.constants import MAX_BASIS_WIDTH
from entbound.core.errors import DomainError
from entbound.models.basis import SectorBasis, SectorLayout


def next_same_popcount(x: int) -> int:
    """Next larger integer with the same number of set bits (Gosper's hack)"""
    u = x & -x
    v = x + u
    return v + (((v ^ x) // u) >> 2)


def masks_with_popcount(width: int, k: int) -> np.ndarray:
    """All width-bit masks with k set bits, ascending"""
    count = math.comb(width, k)
    out = np.empty(count, dtype=np.int64)
    if count == 0:
        return out
    x = (1 << k) - 1
    for i in range(count):
        out[i] = x
        if k:
            x = next_same_popcount(x)
    return out


def popcount_rank(mask: int) -> int:
    """Rank of ``mask`` in ascending order among masks of equal popcount.

    Ascending integer order of k-subsets is colex order, so the rank is the combinatorial
    number system sum of C(position, j) over the j-th set bit (j = 1..k).
    """
    rank = 0
    j = 0
    while mask:
        low = mask & -mask
        j += 1
        rank += math.comb(low.bit_length() - 1, j)
        mask ^= low
    return rank


def number_in_A(state: int, M: int) -> int:
    """Particles on sites 1..M"""
    return (state & ((1 << M) - 1)).bit_count()


def build_basis(L: int, M: int, n: int) -> SectorBasis:
    """Enumerate the n-particle sector of L sites with A = sites 1..M"""
    if not 1 <= L <= MAX_BASIS_WIDTH:
        raise DomainError(f"lattice size must satisfy 1 <= L <= {MAX_BASIS_WIDTH}, got L={L}")
    if not 1 <= M <= L:
        raise DomainError(f"subsystem size must satisfy 1 <= M <= L, got M={M}, L={L}")
    if not 0 <= n <= L:
        raise DomainError(f"particle number must satisfy 0 <= n <= L, got n={n}, L={L}")

    states = masks_with_popcount(L, n)
    a_mask = (1 << M) - 1
    n_a = np.empty(states.size, dtype=np.int64)
    a_index = np.empty(states.size, dtype=np.int64)
    b_index = np.empty(states.size, dtype=np.int64)
    for i, s in enumerate(states.tolist()):
        a_part, b_part = s & a_mask, s >> M
        n_a[i] = a_part.bit_count()
        a_index[i] = popcount_rank(a_part)
        b_index[i] = popcount_rank(b_part)

    sectors: Dict[int, SectorLayout] = {}
    for k in sorted(set(n_a.tolist())):
        dim_a, dim_b = math.comb(M, k), math.comb(L - M, n - k)
        members = np.flatnonzero(n_a == k)
        positions = np.empty(dim_a * dim_b, dtype=np.int64)
        positions[a_index[members] * dim_b + b_index[members]] = members
        sectors[k] = SectorLayout(n_a=k, dim_a=dim_a, dim_b=dim_b, positions=positions)

    for arr in (states, n_a, a_index, b_index):
        arr.setflags(write=False)
    logger.debug(
        f"basis L={L} M={M} n={n}: {states.size} states, "
        f"blocks {[(k, s.shape) for k, s in sectors.items()]}"
    )
    return SectorBasis(
        L=L, M=M, n=n, states=states, n_a=n_a, a_index=a_index, b_index=b_index, sectors=sectors
    )


def block_shapes(basis: SectorBasis) -> List[tuple]:
    """(nA, dim_a, dim_b) per sector, ascending nA"""
    return [(k, s.dim_a, s.dim_b) for k, s in sorted(basis.sectors.items())]
