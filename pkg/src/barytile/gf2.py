"""Homology over GF(2) for complexes, pairs and abstract chain complexes."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .complex import Simplex, SimplicialComplex


class Gf2Matrix:
    """Dense GF(2) matrix with rows packed into 64-bit words."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = rows
        self.cols = cols
        nw = max(1, (cols + 63) // 64)
        if words is None:
            words = np.zeros((rows, nw), dtype=np.uint64)
        self.words = words

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence[int]]) -> "Gf2Matrix":
        """Build from the row indices set in each column (entries repeat mod 2)."""
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i in col:
                m.words[i, j >> 6] ^= np.uint64(1 << (j & 63))
        return m

    @classmethod
    def from_dense(cls, a) -> "Gf2Matrix":
        a = np.asarray(a, dtype=np.uint8) & 1
        m = cls(a.shape[0], a.shape[1])
        for i, j in zip(*np.nonzero(a)):
            m.words[i, j >> 6] |= np.uint64(1 << (int(j) & 63))
        return m

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for j in range(self.cols):
            out[:, j] = (self.words[:, j >> 6] >> np.uint64(j & 63)) & np.uint64(1)
        return out

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return kernels.gf2_rank(self.words)

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = Gf2Matrix(self.rows, other.cols)
        a = self.to_dense()
        for i in range(self.rows):
            ks = np.flatnonzero(a[i])
            if len(ks):
                out.words[i] = np.bitwise_xor.reduce(other.words[ks], axis=0)
        return out

    def is_zero(self) -> bool:
        return not self.words.any()

    def dump(self) -> str:
        """Plain-text bit grid, one row per line."""
        return "\n".join("".join(str(int(x)) for x in r) for r in self.to_dense())


@dataclass
class Gf2ChainComplex:
    """Chain complex with ``boundaries[p]`` the matrix of C_p -> C_{p-1} (``boundaries[0]`` unused)."""

    dimensions: list[int]
    boundaries: list[Gf2Matrix | None]

    def __post_init__(self):
        for p in range(1, len(self.dimensions)):
            d = self.boundaries[p]
            if d.rows != self.dimensions[p - 1] or d.cols != self.dimensions[p]:
                raise ValueError(f"boundary {p} has the wrong shape")
        for p in range(2, len(self.dimensions)):
            if not (self.boundaries[p - 1] @ self.boundaries[p]).is_zero():
                raise ValueError(f"boundary composition nonzero in degree {p}")

    def ranks(self) -> list[int]:
        r = [0]
        for p in range(1, len(self.dimensions)):
            r.append(self.boundaries[p].rank())
        return r + [0]

    def betti(self) -> list[int]:
        r = self.ranks()
        return [self.dimensions[p] - r[p] - r[p + 1] for p in range(len(self.dimensions))]


def _masked_chain_complex(
    K: SimplicialComplex, keep: Callable[[Simplex], bool], shift: int = 0
) -> Gf2ChainComplex:
    """Chains on the kept simplices, boundary projected onto kept facets.

    Degree ``p`` of the result holds the kept simplices of dimension ``p + shift``.
    """
    bases: list[list[Simplex]] = []
    for p in range(shift, K.dimension + 1):
        bases.append([s for s in K.simplices(p) if keep(s)])
    while bases and not bases[-1]:
        bases.pop()
    dims = [len(b) for b in bases]
    mats: list[Gf2Matrix | None] = [None]
    for p in range(1, len(bases)):
        pos = {s: i for i, s in enumerate(bases[p - 1])}
        cols = []
        for s in bases[p]:
            cols.append([pos[t] for t in (s[:i] + s[i + 1:] for i in range(len(s))) if t in pos])
        mats.append(Gf2Matrix.from_columns(dims[p - 1], cols))
    return Gf2ChainComplex(dims, mats)


def chain_complex_of(K: SimplicialComplex) -> Gf2ChainComplex:
    return _masked_chain_complex(K, lambda s: True)


def _pad(b: list[int], length: int) -> list[int]:
    return (b + [0] * length)[:length]


def betti(K: SimplicialComplex) -> list[int]:
    """Betti numbers ``(b_0, ..., b_n)`` over GF(2); empty list for the empty complex."""
    return _pad(chain_complex_of(K).betti(), K.dimension + 1)


def relative_betti(K: SimplicialComplex, L: SimplicialComplex) -> list[int]:
    """Betti numbers of the pair (K, L), indexed by degree 0..dim K."""
    if not L.is_subcomplex_of(K):
        raise ValueError("L is not a subcomplex of K")
    return _pad(_masked_chain_complex(K, lambda s: s not in L).betti(), K.dimension + 1)


class UnionFind:
    """Disjoint sets over hashable items; the representative is the smallest item."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def unite(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class Components:
    """Component id per vertex and per simplex; ids follow the smallest vertex."""

    count: int
    vertex_component: dict[int, int]

    def of(self, s: Simplex) -> int:
        return self.vertex_component[s[0]]

    def groups(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v in sorted(self.vertex_component):
            out[self.vertex_component[v]].append(v)
        return out


def connected_components(K: SimplicialComplex) -> Components:
    uf = UnionFind(K.vertices())
    for a, b in K.simplices(1):
        uf.unite(a, b)
    roots = sorted({uf.find(v) for v in K.vertices()})
    rid = {r: i for i, r in enumerate(roots)}
    return Components(len(roots), {v: rid[uf.find(v)] for v in K.vertices()})
