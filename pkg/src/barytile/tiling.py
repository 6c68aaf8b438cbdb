"""Tiles T^n_s, tilings, h-vectors and the transition matrices H_n, F_n.

A tile is a top simplex with some of its facets removed.  The facet opposite
``top[i]`` is removed when bit ``i`` of ``removed`` is set, so a face belongs
to the tile exactly when it contains every vertex opposite a removed facet.

Subdivided tiles are built in "mask coordinates": a vertex of Sd(Delta_n) is
a nonempty bitmask over the positions 0..n of the top simplex.  Patterns are
computed once per (n, s) and transported onto concrete simplices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import sympy

from .complex import Simplex, SimplicialComplex, boundary_complex, faces_of, standard_simplex
from .subdivision import SubdivisionResult, asymptotic_face_vector, lambda_matrix, subdivide


@dataclass(frozen=True)
class Tile:
    top: Simplex
    removed: int = 0  # bitmask over positions of ``top``

    def __post_init__(self):
        if self.removed >> len(self.top):
            raise ValueError("removed-facet mask refers to a missing facet")

    @classmethod
    def from_removed_vertices(cls, top: Simplex, opposite) -> "Tile":
        top = tuple(top)
        mask = 0
        for v in opposite:
            mask |= 1 << top.index(v)
        return cls(top, mask)

    @property
    def dimension(self) -> int:
        return len(self.top) - 1

    @property
    def type_index(self) -> int:
        return bin(self.removed).count("1")

    def removed_vertices(self) -> tuple[int, ...]:
        return tuple(v for i, v in enumerate(self.top) if self.removed >> i & 1)

    def removed_facets(self) -> list[Simplex]:
        return [self.top[:i] + self.top[i + 1:] for i in range(len(self.top)) if self.removed >> i & 1]

    def contains(self, face: Simplex) -> bool:
        fs = set(face)
        return fs <= set(self.top) and all(v in fs for v in self.removed_vertices())

    def open_faces(self):
        req = self.removed_vertices()
        rest = [v for v in self.top if v not in req]
        if not req:
            yield from faces_of(tuple(rest))
            return
        for extra in _subsets(rest):
            yield tuple(sorted(req + extra))

    def to_json_obj(self) -> dict:
        return {"top": list(self.top), "removed": [list(f) for f in self.removed_facets()]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Tile":
        top = tuple(obj["top"])
        opp = []
        for f in obj.get("removed", []):
            missing = set(top) - set(f)
            if len(f) != len(top) - 1 or len(missing) != 1:
                raise ValueError(f"{f} is not a facet of {top}")
            opp.append(missing.pop())
        return cls.from_removed_vertices(top, opp)


def _subsets(items):
    for mask in range(1 << len(items)):
        yield tuple(x for i, x in enumerate(items) if mask >> i & 1)


@dataclass(frozen=True, eq=False)
class Tiling:
    """Tiles partitioning the simplices of ``ambient`` outside the closed ``excluded`` part."""

    ambient: SimplicialComplex
    tiles: tuple[Tile, ...]
    excluded: SimplicialComplex | None = None

    @property
    def dimension(self) -> int:
        return self.ambient.dimension

    def h_vector(self) -> tuple[int, ...]:
        n = self.dimension
        h = [0] * (n + 2)
        for t in self.tiles:
            h[t.type_index] += 1
        return tuple(h)

    def region_f_vector(self) -> tuple[int, ...]:
        """Face counts of the tiled region (ambient minus excluded), dims 0..n."""
        ex = self.excluded
        return tuple(
            sum(1 for s in self.ambient.simplices(p) if ex is None or s not in ex)
            for p in range(self.dimension + 1)
        )

    def to_json_obj(self) -> dict:
        obj = {"ambient": self.ambient.to_json_obj(), "tiles": [t.to_json_obj() for t in self.tiles]}
        if self.excluded is not None:
            obj["excluded"] = self.excluded.to_json_obj()
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Tiling":
        amb = SimplicialComplex.from_json_obj(obj["ambient"])
        ex = obj.get("excluded")
        return cls(
            amb,
            tuple(Tile.from_json_obj(t) for t in obj["tiles"]),
            SimplicialComplex.from_json_obj(ex) if ex else None,
        )


@dataclass
class TilingReport:
    uncovered: list[Simplex] = field(default_factory=list)
    overlaps: dict[Simplex, list[int]] = field(default_factory=dict)
    foreign: list[tuple[int, Simplex]] = field(default_factory=list)
    bad_tiles: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.uncovered or self.overlaps or self.foreign or self.bad_tiles)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return (
            f"{len(self.uncovered)} uncovered, {len(self.overlaps)} multiply covered, "
            f"{len(self.foreign)} foreign faces, {len(self.bad_tiles)} bad tiles"
        )


def validate_tiling(T: Tiling) -> TilingReport:
    """Exhaustive check that every simplex of the region lies in exactly one tile."""
    rep = TilingReport()
    n = T.dimension
    owner: dict[Simplex, list[int]] = {}
    for i, t in enumerate(T.tiles):
        if len(t.top) != n + 1 or t.top not in T.ambient:
            rep.bad_tiles.append(i)
            continue
        for f in t.open_faces():
            if T.excluded is not None and f in T.excluded:
                rep.foreign.append((i, f))
            owner.setdefault(f, []).append(i)
    for s in T.ambient.all_simplices():
        if T.excluded is not None and s in T.excluded:
            continue
        got = owner.get(s)
        if not got:
            rep.uncovered.append(s)
        elif len(got) > 1:
            rep.overlaps[s] = got
    return rep


def tile_face_count(n: int, s: int, j: int) -> int:
    """Number of j-dimensional open faces of T^n_s."""
    if not (0 <= s <= n + 1 and 0 <= j <= n):
        raise ValueError(f"need 0 <= s <= {n + 1} and 0 <= j <= {n}")
    if j < s - 1:
        return 0
    return comb(n + 1 - s, n - j)


def single_tile(n: int, s: int = 0) -> Tiling:
    """Delta_n as one tile of type s (the first s facets in sphere order removed)."""
    if not 0 <= s <= n + 1:
        raise ValueError(f"s = {s} outside 0..{n + 1}")
    K = standard_simplex(n)
    top = tuple(range(n + 1))
    excl = _removed_region(top, tuple(range(s)))
    return Tiling(K, (Tile(top, (1 << s) - 1),), excl)


def _removed_region(top: Simplex, opposite: Sequence[int]) -> SimplicialComplex | None:
    facets = [tuple(v for v in top if v != u) for u in opposite]
    facets = [f for f in facets if f]
    return SimplicialComplex(facets) if facets else None


def tile_boundary_sphere(m: int) -> Tiling:
    """Tiling of the boundary of Delta_m with one tile of each type 0..m.

    Facet F_i omits vertex i; it loses its intersections with F_0..F_{i-1}.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    amb = boundary_complex(m)
    full = tuple(range(m + 1))
    tiles = []
    for i in range(m + 1):
        top = full[:i] + full[i + 1:]
        tiles.append(Tile.from_removed_vertices(top, range(i)))
    return Tiling(amb, tuple(tiles))


# ---------------------------------------------------------------------------
# subdivided tiles in mask coordinates

Pattern = tuple[tuple[tuple[int, ...], frozenset], ...]


def _embed(mask: int, skip: int) -> int:
    """Mask over positions of a facet (omitting ``skip``) -> mask over the full simplex."""
    low = mask & ((1 << skip) - 1)
    high = mask >> skip
    return low | (high << (skip + 1))


@lru_cache(maxsize=None)
def sd_tile_pattern(n: int, s: int) -> Pattern:
    """Tiles of Sd(T^n_s) as (chain of face masks, removed-vertex masks).

    T^n_s here removes the facets opposite positions 0..s-1.  The boundary of
    Delta_n is tiled facet by facet (facet i omits position i and has type i),
    each boundary tile is subdivided one dimension down, and every piece is
    coned at the barycenter.  A cone over a tile of positive type loses its
    apex automatically; cones over pieces lying in a removed facet also lose
    their base.
    """
    if n == 0:
        return (((1,), frozenset() if s == 0 else frozenset({1})),)
    full = (1 << (n + 1)) - 1
    out = []
    for i in range(n + 1):
        for chain, rem in sd_tile_pattern(n - 1, i):
            new_chain = tuple(_embed(c, i) for c in chain) + (full,)
            new_rem = {_embed(c, i) for c in rem}
            if i < s:
                new_rem.add(full)
            out.append((new_chain, frozenset(new_rem)))
    return tuple(out)


def _mask_to_face(mask: int, order: Sequence[int]) -> Simplex:
    return tuple(sorted(order[j] for j in range(len(order)) if mask >> j & 1))


def _transport(pattern: Pattern, order: Sequence[int], S: SubdivisionResult) -> list[Tile]:
    tiles = []
    for chain, rem in pattern:
        ids = [S.vertex_of(_mask_to_face(c, order)) for c in chain]
        rem_ids = [S.vertex_of(_mask_to_face(c, order)) for c in rem]
        top = tuple(sorted(ids))
        tiles.append(Tile.from_removed_vertices(top, rem_ids))
    return tiles


def _canonical_order(tile: Tile) -> list[int]:
    req = tile.removed_vertices()
    return list(req) + [v for v in tile.top if v not in req]


def sd_tile_tiling(n: int, s: int) -> Tiling:
    """Tiling of Sd(T^n_s) inside Sd(Delta_n)."""
    if n < 1 or not 0 <= s <= n + 1:
        raise ValueError(f"need n >= 1 and 0 <= s <= n+1, got n={n}, s={s}")
    base = single_tile(n, s)
    S = subdivide(base.ambient)
    return induce_sd_tiling(base, S)


def induce_sd_tiling(T: Tiling, S: SubdivisionResult) -> Tiling:
    """Subdivide every tile; h(Sd T) = h(T) H_n."""
    if S.parent != T.ambient:
        raise ValueError("subdivision does not match the tiling's ambient complex")
    n = T.dimension
    tiles: list[Tile] = []
    for t in T.tiles:
        tiles.extend(_transport(sd_tile_pattern(n, t.type_index), _canonical_order(t), S))
    excluded = S.image_from_parent(T.excluded) if T.excluded is not None else None
    return Tiling(S.complex, tuple(tiles), excluded)


def _skeleton_step(T: Tiling) -> Tiling:
    n = T.dimension
    tiles = []
    for t in T.tiles:
        removed = set(t.removed_vertices())
        # kept facets in lexicographic order = omitted vertex descending
        kept = [v for v in reversed(t.top) if v not in removed]
        earlier: list[int] = []
        for v in kept:
            facet = tuple(u for u in t.top if u != v)
            tiles.append(Tile.from_removed_vertices(facet, sorted(removed | set(earlier))))
            earlier.append(v)
    amb = SimplicialComplex._from_closed([T.ambient.simplices(p) for p in range(n)])
    ex = None
    if T.excluded is not None:
        ex = SimplicialComplex._from_closed([T.excluded.simplices(p) for p in range(n)])
        if ex.is_empty():
            ex = None
    return Tiling(amb, tuple(sorted(tiles, key=lambda x: (x.top, x.removed))), ex)


def induce_skeleton_tiling(T: Tiling, i: int) -> Tiling:
    """Tiling of the i-skeleton obtained by peeling the open top cells."""
    if not 0 <= i < T.dimension:
        raise ValueError(f"skeleton index {i} outside 0..{T.dimension - 1}")
    while T.dimension > i:
        T = _skeleton_step(T)
    return T


# ---------------------------------------------------------------------------
# h-vectors and matrices


def h_to_f(h: Sequence[int], n: int, f_minus_one: int | None = None) -> tuple[int, ...]:
    """Extended face vector (f_{-1}, ..., f_n) with sum h_s X^{n+1-s} = sum f_{i-1} (X-1)^{n+1-i}."""
    if len(h) != n + 2:
        raise ValueError(f"h-vector of length {len(h)} for n = {n}")
    f = [sum(h[s] * comb(n + 1 - s, n + 1 - i) for s in range(n + 2)) for i in range(n + 2)]
    if f_minus_one is not None and f_minus_one != f[0]:
        raise ValueError(f"the identity forces f_-1 = h_0 = {f[0]}, not {f_minus_one}")
    return tuple(f)


def f_to_h(f: Sequence[int], n: int) -> tuple[int, ...]:
    """Inverse of :func:`h_to_f` for an extended face vector of length n+2."""
    if len(f) != n + 2:
        raise ValueError(f"face vector of length {len(f)} for n = {n}")
    # sum_i f_{i-1} (X-1)^{n+1-i}, read off coefficients of X^{n+1-s}
    return tuple(
        sum(f[i] * comb(n + 1 - i, n + 1 - s) * (-1) ** (s - i) for i in range(s + 1))
        for s in range(n + 2)
    )


def h_matrix_geometric(n: int) -> tuple[tuple[int, ...], ...]:
    """Row s+1 counts tile types in the constructed tiling of Sd(T^n_s)."""
    rows = []
    for s in range(n + 2):
        h = [0] * (n + 2)
        for _, rem in sd_tile_pattern(n, s):
            h[len(rem)] += 1
        rows.append(tuple(h))
    return tuple(rows)


_H1 = ((1, 1, 0), (0, 2, 0), (0, 1, 1))  # Sd of the three 1-dimensional tiles


def h_matrix_recursive(n: int) -> tuple[tuple[int, ...], ...]:
    """Row recursion: row s of H_{m+1} adds the first s-1 rows of H_m shifted right
    to the last m+3-s rows of H_m (rows counted from 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    H = [list(r) for r in _H1]
    for m in range(1, n):
        size = m + 3
        new = []
        for s in range(1, size + 1):
            row = [0] * size
            for i in range(s - 1):
                for j, x in enumerate(H[i]):
                    row[j + 1] += x
            for i in range(s - 1, m + 2):
                for j, x in enumerate(H[i]):
                    row[j] += x
            new.append(row)
        H = new
    return tuple(tuple(r) for r in H)


def h_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """H_n from the geometric construction, checked against the row recursion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    geo = h_matrix_geometric(n)
    rec = h_matrix_recursive(n)
    if geo != rec:
        raise ArithmeticError(f"H_{n}: construction and recursion disagree")
    return geo


def f_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """F_n[i][j] = C(n+2-i, n+2-j) with 1-based indices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = n + 2
    return tuple(
        tuple(comb(n + 2 - i, n + 2 - j) if j >= i else 0 for j in range(1, size + 1))
        for i in range(1, size + 1)
    )


def _to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def eigen_h(n: int) -> tuple[Fraction, ...]:
    """Normalized left eigenvector of H_n for the eigenvalue (n+1)!."""
    H = sympy.Matrix(h_matrix(n))
    ker = (H.T - factorial(n + 1) * sympy.eye(n + 2)).nullspace()
    if len(ker) != 1:
        raise ArithmeticError(f"eigenspace of dimension {len(ker)}")
    v = ker[0] / sum(ker[0])
    return tuple(_to_fraction(x) for x in v)


def reflect(v: Sequence) -> tuple:
    """The symmetry reversing coordinates (h_s -> h_{n+1-s})."""
    return tuple(reversed(v))


@dataclass
class SpectrumReport:
    n: int
    conjugacy: bool
    ones_fixed: bool
    commutes_with_reflection: bool
    eigenvalues: tuple[int, ...]
    reflection_signs: bool

    @property
    def ok(self) -> bool:
        return self.conjugacy and self.ones_fixed and self.commutes_with_reflection and self.reflection_signs


def eigen_spectrum_check(n: int, bound: int = 7) -> SpectrumReport:
    """Exact checks of H_n = F_n Lambda_n F_n^{-1}, H_n 1 = (n+1)! 1 and the reflection symmetry."""
    if n > bound:
        raise ValueError(f"n = {n} above the configured bound {bound}")
    H = sympy.Matrix(h_matrix(n))
    F = sympy.Matrix(f_matrix(n))
    L = sympy.Matrix(lambda_matrix(n))
    size = n + 2
    J = sympy.Matrix(size, size, lambda i, j: 1 if i + j == size - 1 else 0)
    conj = H == F * L * F.inv()
    ones = sympy.ones(size, 1)
    fixed = H * ones == factorial(n + 1) * ones
    commutes = J * H * J == H
    eig = tuple(int(L[i, i]) for i in range(size))
    # on the eigenspace of s! the reflection acts as (-1)^{n+1-s}
    expected: dict[int, list[int]] = {}
    for s in range(size):
        expected.setdefault(factorial(s), []).append((-1) ** (n + 1 - s))
    signs = True
    for lam, sg in expected.items():
        E = (H - lam * sympy.eye(size)).nullspace()
        if len(E) != len(sg):
            signs = False
            continue
        B = sympy.Matrix.hstack(*E)
        for e in (1, -1):
            nullity = len(sg) - ((J - e * sympy.eye(size)) * B).rank()
            signs &= nullity == sg.count(e)
    return SpectrumReport(n, bool(conj), bool(fixed), bool(commutes), eig, bool(signs))


def eigen_h_polynomial_identity(n: int) -> bool:
    """Check sum_s h_s X^{n+1-s} == sum_p q_p (X-1)^{n-p}, i.e. (X-1)^n q(1/(X-1))."""
    X = sympy.Symbol("X")
    h = [sympy.Rational(x.numerator, x.denominator) for x in eigen_h(n)]
    q = [sympy.Rational(x.numerator, x.denominator) for x in asymptotic_face_vector(n)]
    left = sum(x * X ** (n + 1 - s) for s, x in enumerate(h))
    right = sum(x * (X - 1) ** (n - p) for p, x in enumerate(q))
    return sympy.expand(left - right) == 0
