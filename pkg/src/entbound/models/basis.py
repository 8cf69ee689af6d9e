"""Fixed-n occupation basis with bipartition bookkeeping"""
from typing import Dict, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from entbound.models.system import SystemSpec


class SectorLayout(BaseModel):
    """Placement of one nA sector inside its dim_a x dim_b coefficient matrix.

    ``positions[a * dim_b + b]`` is the dense basis index of the state whose A part has rank
    ``a`` and whose B part has rank ``b``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_a: int
    dim_a: int
    dim_b: int
    positions: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.dim_a, self.dim_b)

    def coefficient_matrix(self, amplitudes: np.ndarray) -> np.ndarray:
        """Reshape sector amplitudes into the A x B coefficient matrix"""
        return amplitudes[self.positions].reshape(self.dim_a, self.dim_b)


class SectorBasis(BaseModel):
    """Occupation basis of n spinless fermions on L sites.

    Site i (1-based) is bit i-1; subsystem A is sites 1..M, i.e. the M lowest bits.
    ``states`` is sorted ascending so ``index_of`` is a binary search.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    L: int
    M: int
    n: int
    states: np.ndarray = Field(description="Occupation bitmasks, ascending")
    n_a: np.ndarray = Field(description="Particles in A for each state")
    a_index: np.ndarray = Field(description="Rank of the A sub-mask among same-popcount masks")
    b_index: np.ndarray = Field(description="Rank of the B sub-mask among same-popcount masks")
    sectors: Dict[int, SectorLayout]

    @property
    def dim(self) -> int:
        return int(self.states.size)

    @property
    def spec(self) -> SystemSpec:
        return SystemSpec(L=self.L, M=self.M, n=self.n)

    def index_of(self, mask: int) -> int:
        i = int(np.searchsorted(self.states, mask))
        if i >= self.dim or int(self.states[i]) != mask:
            raise KeyError(f"bitmask {mask:#b} is not in the n={self.n} sector of L={self.L}")
        return i

    def sector_index(self, i: int) -> Tuple[int, int, int]:
        """(nA, a_index, b_index) of dense state i"""
        return int(self.n_a[i]), int(self.a_index[i]), int(self.b_index[i])

    def ket(self, i: int) -> str:
        """Ket string of state i, written site 1 first"""
        mask = int(self.states[i])
        return "".join("1" if mask >> site & 1 else "0" for site in range(self.L))

    def same_shape(self, other: "SectorBasis") -> bool:
        return (self.L, self.M, self.n) == (other.L, other.M, other.n)
