"""Simplex packings in subdivided tiles and the bounds they feed.

Packings are built recursively in the same mask coordinates as the tile
patterns of :mod:`.tiling`: a packing of Sd(T^n_s) is assembled from packings
of the boundary tiles one dimension down, coned at the barycenter.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .complex import Simplex, SimplicialComplex, boundary_complex, standard_simplex
from .gf2 import betti
from .hypersurface import BernoulliMeasure, expect_exact
from .subdivision import (
    DEFAULT_TOP_CELL_BUDGET,
    BudgetExceeded,
    SubdivisionResult,
    asymptotic_face_vector,
    subdivide,
)
from .tiling import (
    Tiling,
    _canonical_order,
    _embed,
    _mask_to_face,
    eigen_h,
    induce_sd_tiling,
    single_tile,
    validate_tiling,
)

Chain = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Packing:
    """Simplices of ``ambient`` meeting pairwise, and ``boundary``, in dimension < ``overlap_bound``."""

    ambient: SimplicialComplex
    members: tuple[Simplex, ...]
    overlap_bound: int
    boundary: SimplicialComplex | None = None

    def counts_by_dimension(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m in self.members:
            out[len(m) - 1] = out.get(len(m) - 1, 0) + 1
        return out

    def descending_counts(self) -> tuple[int, ...]:
        c = self.counts_by_dimension()
        top = max(c, default=-1)
        return tuple(c.get(j, 0) for j in range(top, -1, -1))

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.members)

    def to_json_obj(self) -> dict:
        return {"overlap_bound": self.overlap_bound, "members": [list(m) for m in self.members]}


@dataclass
class PackingReport:
    foreign: list[Simplex] = field(default_factory=list)
    pairs: list[tuple[Simplex, Simplex, int]] = field(default_factory=list)
    boundary_hits: list[tuple[Simplex, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.foreign or self.pairs or self.boundary_hits)

    def __bool__(self):
        return self.ok


def _meet_dim(a: Simplex, b: Simplex) -> int:
    return len(set(a) & set(b)) - 1


def _boundary_dim(s: Simplex, B: SimplicialComplex) -> int:
    best = -1
    for r in range(len(s), 0, -1):
        if r - 1 <= best:
            break
        from itertools import combinations

        if any(f in B for f in combinations(s, r)):
            best = r - 1
    return best


def validate_packing(
    P: Packing, threshold: int | None = None, boundary: SimplicialComplex | None = None
) -> PackingReport:
    """Check that intersections have dimension < ``threshold`` (default: the packing's bound)."""
    t = P.overlap_bound if threshold is None else threshold
    B = boundary if boundary is not None else P.boundary
    rep = PackingReport()
    mem = list(P.members)
    for m in mem:
        if m not in P.ambient:
            rep.foreign.append(m)
    sets = [set(m) for m in mem]
    for i in range(len(mem)):
        for j in range(i + 1, len(mem)):
            d = len(sets[i] & sets[j]) - 1
            if d >= t:
                rep.pairs.append((mem[i], mem[j], d))
    if B is not None:
        for m in mem:
            d = _boundary_dim(m, B)
            if d >= t:
                rep.boundary_hits.append((m, d))
    return rep


# ---------------------------------------------------------------------------
# recursive constructions in mask coordinates


def _drop_high(mask: int) -> int:
    return mask & ~(1 << (mask.bit_length() - 1))


@lru_cache(maxsize=None)
def pack_pattern(n: int, s: int, p: int) -> tuple[Chain | None, tuple[Chain, ...]]:
    """Packing of Sd(T^n_s) with intersections of dimension < p (p = 0: disjoint).

    Returns ``(distinguished, members)``.  The distinguished member is the
    large flag-shaped simplex the parent call cones: the top simplex when
    p = 0, the flag [sigma_{s-p-1} < ... < sigma_n] when 0 < p < s, and None
    otherwise.  Facet choices drop the highest position.
    """
    full = (1 << (n + 1)) - 1
    if n == 0:
        return (1,), ((1,),)
    if s == n + 1:
        chain = [full]
        for _ in range(p):
            chain.insert(0, _drop_high(chain[0]))
        ch = tuple(chain)
        return ch, (ch,)
    ls = range(0, n + 1) if s == 0 else range(s, n + 1)
    members: list[Chain] = []
    dist_pos = None
    for l in ls:
        d_l, mem = pack_pattern(n - 1, l, max(p - 1, 0))
        for m in mem:
            c = tuple(_embed(x, l) for x in m)
            is_dist = l == s and m == d_l
            if p > 0 or is_dist:
                c = c + (full,)
            if is_dist:
                dist_pos = len(members)
            members.append(c)
    dist = None
    if p == 0:
        dist = members[dist_pos]
    elif s > p:
        # extend the coned flag by a facet of its smallest element
        old = members[dist_pos]
        dist = (_drop_high(old[0]),) + old
        members[dist_pos] = dist
    return dist, tuple(members)


def _transport(chains, order: Sequence[int], S: SubdivisionResult) -> list[Simplex]:
    return [
        tuple(sorted(S.vertex_of(_mask_to_face(c, order)) for c in ch)) for ch in chains
    ]


def _tile_packing(n: int, s: int, p: int, S: SubdivisionResult, excluded) -> Packing:
    _, mem = pack_pattern(n, s, p)
    members = _transport(mem, list(range(n + 1)), S)
    return Packing(S.complex, tuple(sorted(members)), p, excluded)


def pack_disjoint_sd(n: int) -> Packing:
    """Disjoint simplices in Sd(Delta_n): one n-simplex and 2^{n-1-j} j-simplices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    S = subdivide(standard_simplex(n))
    return _tile_packing(n, 0, 0, S, None)


def _tile_setup(n: int, s: int):
    T = single_tile(n, s)
    S = subdivide(T.ambient)
    ex = S.image_from_parent(T.excluded) if T.excluded is not None else None
    return S, ex


def pack_disjoint_sd_tile(n: int, s: int) -> Packing:
    """Disjoint simplices in Sd(T^n_s), avoiding the removed facets."""
    if n < 1 or not 1 <= s <= n + 1:
        raise ValueError(f"need n >= 1 and 1 <= s <= n+1, got n={n}, s={s}")
    S, ex = _tile_setup(n, s)
    return _tile_packing(n, s, 0, S, ex)


def pack_overlap(n: int, s: int, p: int) -> Packing:
    """Packing of Sd(T^n_s) whose members meet each other and the removed part in dim < p."""
    if not 1 <= p <= n - 1 or not 0 <= s <= n + 1:
        raise ValueError(f"need 1 <= p <= n-1 and 0 <= s <= n+1, got n={n}, s={s}, p={p}")
    S, ex = _tile_setup(n, s)
    return _tile_packing(n, s, p, S, ex)


def pack_tiled_complex(T: Tiling, S: SubdivisionResult, p: int) -> Packing:
    """Tile-wise union of the packings above, transported into Sd(ambient)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    if S.parent != T.ambient:
        raise ValueError("subdivision does not match the tiling's ambient complex")
    if not validate_tiling(T):
        raise ValueError("invalid tiling")
    n = T.dimension
    if p > n:
        raise ValueError(f"p = {p} above the dimension {n}")
    members: list[Simplex] = []
    for t in T.tiles:
        _, mem = pack_pattern(n, t.type_index, p)
        members.extend(_transport(mem, _canonical_order(t), S))
    ex = S.image_from_parent(T.excluded) if T.excluded is not None else None
    return Packing(S.complex, tuple(sorted(members)), p, ex)


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundReport:
    kind: str  # M_p, lambda_lower, e_upper, mnp_rhs
    n: int | None
    p: int
    nu: Fraction
    value: Fraction
    provenance: str
    extra: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "p": self.p,
            "nu": f"{self.nu.numerator}/{self.nu.denominator}",
            "value": _frac_str(self.value),
            "value_float": float(self.value),
            "provenance": self.provenance,
        }
        for k, v in self.extra.items():
            out[k] = _frac_str(v) if isinstance(v, Fraction) else v
        return out


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _coef(p: int, nu: Fraction) -> Fraction:
    return nu * (1 - nu) * (nu**p + (1 - nu) ** p)


def m_p_nu(K: SimplicialComplex, p: int, nu) -> Fraction:
    """(nu^{p+1} + (1-nu)^{p+1}) b_p + nu(1-nu)(nu^p + (1-nu)^p) sum_{i>p} (-1)^{i+1-p} (f_i - b_i)."""
    nu = Fraction(nu)
    if p < 0:
        raise ValueError("p must be >= 0")
    if K.is_empty():
        return Fraction(0)
    b = betti(K)
    f = K.f_vector().faces
    bp = b[p] if p < len(b) else 0
    tail = sum((-1) ** (i + 1 - p) * (f[i] - b[i]) for i in range(p + 1, K.dimension + 1))
    return (nu ** (p + 1) + (1 - nu) ** (p + 1)) * bp + _coef(p, nu) * tail


@dataclass
class CheckReport:
    ok: bool
    details: dict


def _expect(K: SimplicialComplex, quantity: str, p: int, nu: Fraction, budget: int) -> Fraction:
    if K.is_empty():
        return Fraction(0)
    return expect_exact(K, 1, p, BernoulliMeasure(nu), quantity, budget=budget).mean


def upper_bound_check(K: SimplicialComplex, p: int, nu, budget: int = 2**22) -> CheckReport:
    """E b_p(K_0) <= M_{p,nu}(K), exactly."""
    nu = Fraction(nu)
    lhs = _expect(K, "bK0", p, nu, budget)
    rhs = m_p_nu(K, p, nu)
    return CheckReport(lhs <= rhs, {"expected_b": lhs, "M": rhs})


def monotony_check(
    K: SimplicialComplex, L: SimplicialComplex, p: int, nu, budget: int = 2**22
) -> CheckReport:
    """0 <= M(L) - E b_p(L_0) <= M(K) - E b_p(K_0) and the face-number analogue.

    The expectation on L uses the marginal of the product measure on L's vertices.
    """
    if not L.is_subcomplex_of(K):
        raise ValueError("L is not a subcomplex of K")
    nu = Fraction(nu)
    bK, bL = _expect(K, "bK0", p, nu, budget), _expect(L, "bK0", p, nu, budget)
    fK, fL = _expect(K, "fK0", p, nu, budget), _expect(L, "fK0", p, nu, budget)
    gap_L = m_p_nu(L, p, nu) - bL
    gap_K = m_p_nu(K, p, nu) - bK
    ok = 0 <= gap_L <= gap_K and fL - bL <= fK - bK
    return CheckReport(ok, {"gap_L": gap_L, "gap_K": gap_K, "f_gap_L": fL - bL, "f_gap_K": fK - bK})


def open_simplex_tiling(n: int, d: int, budget: int = DEFAULT_TOP_CELL_BUDGET):
    """Induced tiling of Sd^{d-1} of the open n-simplex, plus its subdivision chain."""
    if factorial(n + 1) ** d > budget:
        raise BudgetExceeded(f"Sd^{d}(Delta_{n}) exceeds the budget of {budget} top cells")
    T = single_tile(n, n + 1)
    S = None
    for _ in range(d - 1):
        S = subdivide(T.ambient, S)
        T = induce_sd_tiling(T, S)
    return T, S


def lambda_packing(n: int, p: int, d: int, budget: int = DEFAULT_TOP_CELL_BUDGET):
    """The subcomplex L_d of Sd^d(Delta_n) used for the lambda lower bound.

    Each tile of the induced tiling of Sd^{d-1}(open Delta_n) receives the
    packing with intersections of dimension < p-1, so the family meets
    pairwise and meets the subdivided boundary in dimension < p-1.
    """
    if not 1 <= p <= n - 1 or d < 1:
        raise ValueError(f"need 1 <= p <= n-1 and d >= 1, got n={n}, p={p}, d={d}")
    T, prev = open_simplex_tiling(n, d, budget)
    S = subdivide(T.ambient, prev)
    P = pack_tiled_complex(T, S, p - 1)
    boundary = S.image(boundary_complex(n))
    return P, boundary, T


def lambda_lower_bound(n: int, p: int, nu, d: int, budget: int = DEFAULT_TOP_CELL_BUDGET) -> BoundReport:
    """M_{p,nu}(L_d) / (n+1)!^d for the constructed packing L_d."""
    nu = Fraction(nu)
    P, boundary, T = lambda_packing(n, p, d, budget)
    rep = validate_packing(P, threshold=p - 1, boundary=boundary)
    if not rep:
        raise ArithmeticError("constructed packing violates the intersection conditions")
    L = P.complex()
    value = m_p_nu(L, p, nu) / factorial(n + 1) ** d
    return BoundReport(
        "lambda_lower",
        n,
        p,
        nu,
        value,
        f"tile-wise packings (overlap < {p - 1}) on the induced tiling of Sd^{d - 1} of the open simplex",
        {"d": d, "tiling_h": list(T.h_vector()), "packing_counts": P.descending_counts()},
    )


def brute_force_lambda(
    n: int, p: int, nu, d: int, threshold: int | None = None, max_candidates: int = 24
) -> Fraction:
    """Exhaustive max of M_{p,nu}(L)/(n+1)!^d over admissible families in Sd^d(Delta_n).

    Admissible: pairwise intersections and intersections with the subdivided
    boundary of dimension < ``threshold`` (default p-1).  Only usable on tiny cases.
    """
    from .subdivision import subdivide_iter

    nu = Fraction(nu)
    t = p - 1 if threshold is None else threshold
    S = subdivide_iter(standard_simplex(n), d)
    B = S.image(boundary_complex(n))
    cands = [s for s in S.complex.all_simplices() if _boundary_dim(s, B) < t]
    if len(cands) > max_candidates:
        raise BudgetExceeded(f"{len(cands)} candidate simplices; brute force capped at {max_candidates}")
    best = Fraction(0)
    sets = [set(c) for c in cands]

    def rec(start: int, chosen: list[int]):
        nonlocal best
        if chosen:
            val = m_p_nu(SimplicialComplex(cands[i] for i in chosen), p, nu)
            best = max(best, val)
        for i in range(start, len(cands)):
            if all(len(sets[i] & sets[j]) - 1 < t for j in chosen):
                chosen.append(i)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return best / factorial(n + 1) ** d


def mnp_rhs(n: int, p: int, nu) -> BoundReport:
    """Asymptotic lower bound for lambda from the eigenvector h^n."""
    if n < 2 or not 1 <= p <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= p <= n-1, got n={n}, p={p}")
    nu = Fraction(nu)
    h = eigen_h(n)

    def C(a, b):
        return comb(a, b) if 0 <= b <= a else 0

    def weighted(upto: int) -> Fraction:
        return sum((h[i] / 2**i for i in range(upto + 1)), Fraction(0))

    bracket = (h[p] + 2 ** (p - 1) * weighted(p - 1)) * C(n, p + 1)
    for j in range(p + 1, n + 2):
        bracket += (h[j] + Fraction(2) ** (j - 2) * weighted(j - 2)) * C(n + p - j, p + 1)
    value = _coef(p, nu) / factorial(n + 1) * bracket
    return BoundReport("mnp_rhs", n, p, nu, value, "closed form in the asymptotic h-vector", {"h": [str(x) for x in h]})


def q_term(n: int, p: int, nu) -> Fraction:
    nu = Fraction(nu)
    q = asymptotic_face_vector(n)
    return _coef(p, nu) * sum(((-1) ** (l + 1 - p) * q[l] for l in range(p + 1, n + 1)), Fraction(0))


def e_upper_bound(
    n: int, p: int, nu, lambda_bounds: Sequence[BoundReport] = (), use_rhs: bool = True
) -> BoundReport:
    """Upper bound q-term minus the best available lower bound on lambda."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1, got n={n}, p={p}")
    nu = Fraction(nu)
    qt = q_term(n, p, nu)
    cands = list(lambda_bounds)
    if use_rhs and n >= 2:
        cands.append(mnp_rhs(n, p, nu))
    best = max(cands, key=lambda r: r.value, default=None)
    lam = best.value if best is not None else Fraction(0)
    return BoundReport(
        "e_upper",
        n,
        p,
        nu,
        qt - lam,
        f"q-term minus lambda lower bound from {best.kind if best else 'none'}",
        {"q_term": qt, "lambda_lower": lam},
    )
