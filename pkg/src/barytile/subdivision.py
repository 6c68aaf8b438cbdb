"""Barycentric subdivision, the interior-face matrix and asymptotic face numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

import sympy

from .complex import Simplex, SimplicialComplex

DEFAULT_TOP_CELL_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its configured size budget."""


@dataclass(frozen=True, eq=False)
class SubdivisionResult:
    """Sd of ``parent`` with the map from new vertices to parent simplices.

    For iterated subdivisions ``previous`` is the result that produced
    ``parent``; ``depth`` counts the levels.  Depth 0 is the identity.
    """

    complex: SimplicialComplex
    vertex_registry: dict[int, Simplex]
    parent: SimplicialComplex
    previous: "SubdivisionResult | None" = None
    depth: int = 1
    _inverse: dict = field(default_factory=dict, repr=False)

    @property
    def base(self) -> SimplicialComplex:
        r = self
        while r.previous is not None:
            r = r.previous
        return r.parent if r.depth else r.complex

    def vertex_of(self, parent_simplex: Simplex) -> int:
        """New vertex id of the barycenter of ``parent_simplex``."""
        if not self._inverse:
            self._inverse.update({s: v for v, s in self.vertex_registry.items()})
        return self._inverse[tuple(parent_simplex)]

    def flag(self, simplex: Simplex) -> list[Simplex]:
        """The flag of parent simplices that ``simplex`` of the result stands for."""
        return sorted((self.vertex_registry[v] for v in simplex), key=len)

    def resolve(self, v: int):
        """Resolve a vertex all the way down to the base complex as nested flags."""
        s = self.vertex_registry[v]
        if self.previous is None or self.previous.depth == 0:
            return s
        prev = self.previous
        ordered = sorted(s, key=lambda u: len(prev.vertex_registry[u]))
        return [prev.resolve(u) for u in ordered]

    def image(self, L: SimplicialComplex) -> SimplicialComplex:
        """Subdivision of a subcomplex ``L`` of the base, as a subcomplex of ``complex``."""
        if self.depth == 0:
            return L
        inner = self.previous.image(L) if self.previous is not None else L
        return self.image_from_parent(inner)

    def image_from_parent(self, L: SimplicialComplex) -> SimplicialComplex:
        """Subdivision of a subcomplex ``L`` of ``parent`` (one level only)."""
        if self.depth == 0:
            return L
        reg = self.vertex_registry
        return SimplicialComplex._from_closed(
            [
                [s for s in self.complex.simplices(p) if all(reg[v] in L for v in s)]
                for p in range(self.complex.dimension + 1)
            ]
        )

    def registry_records(self) -> list[dict]:
        """Registry rows ``{"vertex": id, "flag": [...]}`` for serialization.

        At depth 1 the flag is the single parent simplex; deeper, it is the
        parent simplex read as a flag of simplices one level further down.
        """
        rows = []
        for v in sorted(self.vertex_registry):
            s = self.vertex_registry[v]
            if self.previous is None or self.previous.depth == 0:
                fl = [list(s)]
            else:
                fl = [list(t) for t in self.previous.flag(s)]
            rows.append({"vertex": v, "flag": fl})
        return rows


def identity_subdivision(K: SimplicialComplex) -> SubdivisionResult:
    return SubdivisionResult(
        complex=K,
        vertex_registry={v: (v,) for v in K.vertices()},
        parent=K,
        previous=None,
        depth=0,
    )


def subdivide(K: SimplicialComplex, _previous: SubdivisionResult | None = None) -> SubdivisionResult:
    """One barycentric subdivision.

    New vertex ids follow the lexicographic order of the parent simplices.
    """
    if K.is_empty():
        raise ValueError("cannot subdivide the empty complex")
    parents = sorted(K.all_simplices())
    ids = {s: i for i, s in enumerate(parents)}
    n = K.dimension
    levels: list[set[Simplex]] = [set() for _ in range(n + 1)]
    for top in K.maximal_simplices():
        for order in permutations(top):
            chain = tuple(sorted(ids[tuple(sorted(order[: r + 1]))] for r in range(len(order))))
            levels[len(chain) - 1].add(chain)
    for p in range(n, 0, -1):
        below = levels[p - 1]
        for s in levels[p]:
            for i in range(p + 1):
                below.add(s[:i] + s[i + 1:])
    depth = 1 if _previous is None else _previous.depth + 1
    return SubdivisionResult(
        complex=SimplicialComplex._from_closed(levels),
        vertex_registry={i: s for s, i in ids.items()},
        parent=K,
        previous=_previous,
        depth=depth,
    )


def subdivide_iter(
    K: SimplicialComplex, d: int, budget: int = DEFAULT_TOP_CELL_BUDGET
) -> SubdivisionResult:
    """``d``-fold barycentric subdivision with composed registries."""
    if d < 0:
        raise ValueError("d must be >= 0")
    n = K.dimension
    projected = len(K.simplices(n)) * factorial(n + 1) ** d
    if projected > budget:
        raise BudgetExceeded(
            f"Sd^{d} would have {projected} top cells, above the budget of {budget}"
        )
    result = identity_subdivision(K)
    for _ in range(d):
        result = subdivide(result.complex, result if result.depth else None)
    return result


@lru_cache(maxsize=None)
def _chains_ending_at_full(m: int) -> tuple[int, ...]:
    """Counts of strict chains of nonempty faces of Delta_m ending at Delta_m, by length."""
    full = (1 << (m + 1)) - 1

    @lru_cache(maxsize=None)
    def chains(mask: int) -> tuple[int, ...]:
        # counts[L] = chains of length L+1 ending at mask
        counts = [1]
        sub = (mask - 1) & mask
        while sub:
            for length, c in enumerate(chains(sub)):
                if length + 1 >= len(counts):
                    counts.extend([0] * (length + 2 - len(counts)))
                counts[length + 1] += c
            sub = (sub - 1) & mask
        return tuple(counts)

    return chains(full)


def lambda_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Interior-face matrix: entry (i, j) counts interior (j-2)-faces of Sd(Delta_{i-2}).

    Rows and columns are 1-based in the description and 0-based here; the
    first row stands for the empty simplex.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    size = n + 2
    rows = [[0] * size for _ in range(size)]
    rows[0][0] = 1
    for i in range(1, size):
        m = i - 1  # Delta_m
        for length, c in enumerate(_chains_ending_at_full(m)):
            rows[i][length + 1] = c  # a chain of length L+1 is an L-simplex
    return tuple(tuple(r) for r in rows)


def asymptotic_face_vector(n: int) -> tuple[Fraction, ...]:
    """Limits ``q_{i,n}`` of ``f_i(Sd^d K) / (f_n(K) (n+1)!^d)`` for i = 0..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = sympy.Matrix(lambda_matrix(n))
    ker = (lam.T - factorial(n + 1) * sympy.eye(n + 2)).nullspace()
    if len(ker) != 1:
        raise ArithmeticError(f"expected a one-dimensional eigenspace, got {len(ker)}")
    v = ker[0] / ker[0][n + 1]
    return tuple(Fraction(int(x.p), int(x.q)) for x in v[1:])
