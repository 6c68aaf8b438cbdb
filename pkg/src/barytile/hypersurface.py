"""Random cochains, the dual hypersurface V_eps and expectation estimators.

Two independent evaluation routes are provided:

* ``"cells"`` (k = 1 only) works directly on K.  The chains of V_eps are the
  simplices of K on which eps is non-constant, shifted down one degree, with
  the boundary projected onto non-constant faces.
* ``"flags"`` (any k) builds V_eps as the full subcomplex of Sd(K) spanned
  by barycenters of simplices carrying a k-face with d(eps) = 1.

Both routes evaluate whole batches of cochains through :mod:`.kernels`.
"""
from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, sqrt
from typing import Sequence

import numpy as np

from . import kernels
from .complex import Simplex, SimplicialComplex, boundary_complex, standard_simplex
from .gf2 import Gf2ChainComplex, _masked_chain_complex, betti, connected_components
from .subdivision import (
    DEFAULT_TOP_CELL_BUDGET,
    BudgetExceeded,
    SubdivisionResult,
    subdivide,
    subdivide_iter,
)

DEFAULT_ENUMERATION_BUDGET = 2**22
BLOCK = 4096  # samples per RNG stream
QUANTITIES = ("bV", "btV", "bK0", "fK0", "chiV")


@dataclass(frozen=True)
class BernoulliMeasure:
    """Product measure with P(eps(sigma) = 0) = nu."""

    nu: Fraction

    def __post_init__(self):
        nu = Fraction(self.nu)
        if not 0 <= nu <= 1:
            raise ValueError(f"nu = {nu} outside [0, 1]")
        object.__setattr__(self, "nu", nu)

    @classmethod
    def parse(cls, text: str) -> "BernoulliMeasure":
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot read nu from {text!r}") from exc

    def weight(self, zeros: int, ones: int) -> Fraction:
        return self.nu**zeros * (1 - self.nu) ** ones


@dataclass(frozen=True)
class Cochain:
    """Bits on the (k-1)-simplices of ``carrier``, in its lexicographic order."""

    carrier: SimplicialComplex
    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.carrier.simplices(self.k - 1)):
            raise ValueError("cochain length does not match the (k-1)-simplices")

    def __getitem__(self, s: Simplex) -> int:
        return self.values[self.carrier.index(self.k - 1)[tuple(s)]]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.uint8)


@dataclass(frozen=True)
class ExpectationEstimate:
    mean: Fraction
    mode: str  # "exact" or "monte-carlo"
    samples: int
    std_error: float | None = None
    seed: int | None = None

    def __float__(self):
        return float(self.mean)


@dataclass(frozen=True, eq=False)
class HypersurfaceComplex:
    """V_eps inside ``carrier.complex`` (= Sd of the cochain's complex)."""

    carrier: SubdivisionResult
    complex: SimplicialComplex
    boundary: SimplicialComplex | None = None  # marked subcomplex of the eps-carrier

    def betti(self) -> list[int]:
        return betti(self.complex)


# ---------------------------------------------------------------------------
# single-cochain operations


def _rng_block(seed: int, block: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.Generator(np.random.Philox(key=[seed % 2**64, block]))


def _sample_block(seed: int, block: int, width: int, nu: Fraction) -> np.ndarray:
    u = _rng_block(seed, block).random((BLOCK, width))
    return (u >= float(nu)).astype(np.uint8)


def sample_cochain(
    K: SimplicialComplex, k: int, measure: BernoulliMeasure, seed: int, index: int = 0
) -> Cochain:
    """Sample number ``index`` of the stream for ``seed``; bit 0 has probability nu."""
    if not 1 <= k <= K.dimension:
        raise ValueError(f"k = {k} outside 1..{K.dimension}")
    width = len(K.simplices(k - 1))
    row = _sample_block(seed, index // BLOCK, width, measure.nu)[index % BLOCK]
    return Cochain(K, k, tuple(int(x) for x in row))


def coboundary_value(eps: Cochain, sigma: Simplex) -> int:
    sigma = tuple(sigma)
    if len(sigma) - 1 != eps.k:
        raise ValueError(f"need a {eps.k}-simplex, got dimension {len(sigma) - 1}")
    return sum(eps[sigma[:i] + sigma[i + 1:]] for i in range(len(sigma))) & 1


def _active_parents(K: SimplicialComplex, eps: Cochain) -> set[Simplex]:
    k = eps.k
    hot = {s for s in K.simplices(k) if coboundary_value(eps, s)}
    out = set()
    for q in range(k, K.dimension + 1):
        for t in K.simplices(q):
            if any(f in hot for f in combinations(t, k + 1)):
                out.add(t)
    return out


def build_hypersurface(
    K: SimplicialComplex,
    eps: Cochain,
    boundary: SimplicialComplex | None = None,
    subdivision: SubdivisionResult | None = None,
) -> HypersurfaceComplex:
    """V_eps: flags of Sd(K) whose smallest element carries a k-face with d(eps) = 1."""
    if eps.carrier != K:
        raise ValueError("cochain lives on a different complex")
    S = subdivision if subdivision is not None else subdivide(K)
    active = _active_parents(K, eps)
    keep = [v for v, s in S.vertex_registry.items() if s in active]
    return HypersurfaceComplex(S, S.complex.induced(keep), boundary)


def filtration_level(K: SimplicialComplex, eps: Cochain, i: int) -> SimplicialComplex:
    """K_i: simplices on which the rarer eps-value occurs at most i times."""
    if eps.k != 1:
        raise ValueError("the filtration is defined for k = 1 only")
    top = -(-(K.dimension + 1) // 2)
    if not 0 <= i <= top:
        raise ValueError(f"level {i} outside 0..{top}")

    def keep(s):
        ones = sum(eps[(v,)] for v in s)
        return min(ones, len(s) - ones) <= i

    return K.subcomplex(keep)


def _nonconstant(eps: Cochain):
    return lambda s: len({eps[(v,)] for v in s}) > 1


def shifted_relative_complex(K: SimplicialComplex, eps: Cochain) -> Gf2ChainComplex:
    """Degree p: (p+1)-simplices with eps non-constant; boundary projected onto those."""
    if eps.k != 1:
        raise ValueError("the shifted complex is defined for k = 1 only")
    return _masked_chain_complex(K, _nonconstant(eps), shift=1)


def betti_tilde(V: HypersurfaceComplex, boundary: SimplicialComplex | None = None) -> list[int]:
    """Betti numbers summed over components of V that avoid the marked boundary."""
    B = boundary if boundary is not None else V.boundary
    if B is None:
        raise ValueError("betti_tilde needs a marked boundary subcomplex")
    n = V.carrier.complex.dimension
    out = [0] * (n + 1)
    if V.complex.is_empty():
        return out
    comps = connected_components(V.complex)
    reg = V.carrier.vertex_registry
    touched = {comps.vertex_component[v] for v in V.complex.vertices() if reg[v] in B}
    for c, verts in enumerate(comps.groups()):
        if c in touched:
            continue
        for p, b in enumerate(betti(V.complex.induced(verts))):
            out[p] += b
    return out


# ---------------------------------------------------------------------------
# batch evaluation


def parse_quantity(text: str, p: int | None = None) -> tuple[str, int]:
    """Accept ``bV``/``btV``/``bK0``/``fK0``/``chiV`` or forms with p inlined (``b0V``, ``bt1V``)."""
    m = re.fullmatch(r"(bt|b|f)(\d+)(V|K0)", text)
    if m:
        name = m.group(1) + m.group(3)
        if name == "ftV" or name == "fV" or name == "btK0":
            raise ValueError(f"unknown quantity {text!r}")
        return name, int(m.group(2))
    if text in QUANTITIES:
        return text, (p if p is not None else 0)
    raise ValueError(f"unknown quantity {text!r}; expected one of {QUANTITIES}")


class _Carrier:
    """Index arrays of K (and lazily of Sd K) used by the batch evaluators."""

    def __init__(self, K: SimplicialComplex, boundary: SimplicialComplex | None):
        if K.is_empty():
            raise ValueError("empty carrier")
        if boundary is not None and not boundary.is_subcomplex_of(K):
            raise ValueError("boundary is not a subcomplex of the carrier")
        self.K = K
        self.boundary = boundary
        self.n = n = K.dimension
        vpos = K.index(0)
        self.verts = [
            np.array([[vpos[(v,)] for v in s] for s in K.simplices(p)], dtype=np.int64).reshape(-1, p + 1)
            for p in range(n + 1)
        ]
        self.facets = [np.zeros((0, 0), dtype=np.int64)]
        for p in range(1, n + 1):
            idx = K.index(p - 1)
            self.facets.append(
                np.array(
                    [[idx[s[:i] + s[i + 1:]] for i in range(p + 1)] for s in K.simplices(p)],
                    dtype=np.int64,
                ).reshape(-1, p + 1)
            )
        self.sizes = [len(K.simplices(p)) for p in range(n + 1)]
        self.in_boundary = [
            np.array([boundary is not None and s in boundary for s in K.simplices(p)], dtype=bool)
            for p in range(n + 1)
        ]
        # cell graph for k = 1: nodes are simplices of dimension >= 1
        self.cell_offset = [0] * (n + 2)
        for p in range(1, n + 1):
            self.cell_offset[p + 1] = self.cell_offset[p] + self.sizes[p]
        edges = []
        for p in range(2, n + 1):
            src = np.repeat(np.arange(self.sizes[p]) + self.cell_offset[p], p + 1)
            dst = self.facets[p].reshape(-1) + self.cell_offset[p - 1]
            edges.append(np.stack([src, dst], axis=1))
        self.cell_edges = np.concatenate(edges) if edges else np.zeros((0, 2), dtype=np.int64)
        self._flags = None

    # -- flag route data -------------------------------------------------
    @property
    def flags(self):
        if self._flags is None:
            self._flags = _FlagIndex(self)
        return self._flags


class _FlagIndex:
    def __init__(self, car: _Carrier):
        K = car.K
        self.S = S = subdivide(K)
        sd = S.complex
        n = car.n
        offset = np.cumsum([0] + car.sizes)
        gid = {}
        for p in range(n + 1):
            for i, s in enumerate(K.simplices(p)):
                gid[s] = offset[p] + i
        self.parent_offset = offset
        self.total_parents = int(offset[-1])
        reg = S.vertex_registry
        vgid = {v: gid[s] for v, s in reg.items()}
        vdim = {v: len(s) for v, s in reg.items()}
        vpos = sd.index(0)
        self.vertex_gid = np.array([vgid[v] for (v,) in sd.simplices(0)], dtype=np.int64)
        self.minparent = [
            np.array([vgid[min(s, key=vdim.__getitem__)] for s in sd.simplices(r)], dtype=np.int64)
            for r in range(n + 1)
        ]
        self.facets = [np.zeros((0, 0), dtype=np.int64)]
        for r in range(1, n + 1):
            idx = sd.index(r - 1)
            self.facets.append(
                np.array(
                    [[idx[s[:i] + s[i + 1:]] for i in range(r + 1)] for s in sd.simplices(r)],
                    dtype=np.int64,
                ).reshape(-1, r + 1)
            )
        self.edges = np.array(
            [[vpos[(a,)], vpos[(b,)]] for a, b in sd.simplices(1)], dtype=np.int64
        ).reshape(-1, 2)
        self.first_vertex = [
            np.array([vpos[(s[0],)] for s in sd.simplices(r)], dtype=np.int64) for r in range(n + 1)
        ]
        B = car.boundary
        self.vertex_on_boundary = np.array(
            [B is not None and reg[v] in B for (v,) in sd.simplices(0)], dtype=bool
        )
        self._kfaces = {}
        self.car = car

    def kfaces(self, k: int, q: int) -> np.ndarray:
        key = (k, q)
        if key not in self._kfaces:
            K = self.car.K
            idx = K.index(k)
            self._kfaces[key] = np.array(
                [[idx[f] for f in combinations(t, k + 1)] for t in K.simplices(q)], dtype=np.int64
            ).reshape(-1, comb(q + 1, k + 1))
        return self._kfaces[key]


@lru_cache(maxsize=32)
def _carrier(K: SimplicialComplex, boundary: SimplicialComplex | None) -> _Carrier:
    return _Carrier(K, boundary)


def _interior(labels: np.ndarray, active: np.ndarray, marked: np.ndarray) -> np.ndarray:
    """Active nodes whose component holds no active marked node."""
    S, N = labels.shape
    hit = np.zeros((S, N), dtype=bool)
    rows, cols = np.nonzero(active & marked[None, :])
    hit[rows, labels[rows, cols]] = True
    safe = np.where(labels < 0, 0, labels)
    return active & ~hit[np.arange(S)[:, None], safe]


def _linked(labels: np.ndarray, active: np.ndarray, mark_a: np.ndarray, mark_b: np.ndarray) -> np.ndarray:
    """Per sample: does some component hold an active node of both marks."""
    S, N = labels.shape
    hits = []
    for mark in (mark_a, mark_b):
        hit = np.zeros((S, N), dtype=bool)
        rows, cols = np.nonzero(active & mark[None, :])
        hit[rows, labels[rows, cols]] = True
        hits.append(hit)
    return (hits[0] & hits[1]).any(axis=1)


def _betti_from_masks(facets, masks, p) -> np.ndarray:
    """b_p of the masked complex whose degree-q cells are ``masks[q]``."""
    S = masks[0].shape[0] if masks else 0
    top = len(masks) - 1
    if p > top or p < 0:
        return np.zeros(S, dtype=np.int64)
    out = masks[p].sum(axis=1).astype(np.int64)
    if p >= 1:
        out -= kernels.restricted_ranks(facets[p], masks[p], masks[p - 1])
    if p + 1 <= top:
        out -= kernels.restricted_ranks(facets[p + 1], masks[p + 1], masks[p])
    return out


def _cell_masks(car: _Carrier, eps: np.ndarray) -> list[np.ndarray]:
    """nonconstant[q] for q = 0..n as uint8 arrays of shape (S, f_q)."""
    out = []
    for q in range(car.n + 1):
        vals = eps[:, car.verts[q]]
        out.append((vals.min(axis=2) != vals.max(axis=2)).astype(np.uint8))
    return out


def _evaluate_cells(car: _Carrier, eps: np.ndarray, quantity: str, p: int) -> np.ndarray:
    nc = _cell_masks(car, eps)
    n = car.n
    if quantity == "fK0":
        if p > n:
            return np.zeros(len(eps), dtype=np.int64)
        return (1 - nc[p]).sum(axis=1).astype(np.int64)
    if quantity == "bK0":
        const = [1 - m for m in nc]
        return _betti_from_masks(car.facets, const, p)
    if quantity == "chiV":
        return sum((-1) ** q * nc[q + 1].sum(axis=1).astype(np.int64) for q in range(n))
    # V lives on cells of dimension >= 1, shifted down by one
    shifted_facets = car.facets[1:]
    shifted = nc[1:]
    if quantity == "bV":
        return _betti_from_masks(_shift_facets(shifted_facets), shifted, p)
    if quantity == "btV":
        if car.boundary is None:
            raise ValueError("btV needs a marked boundary")
        active = np.concatenate(shifted, axis=1).astype(bool) if shifted else np.zeros((len(eps), 0), bool)
        marked = np.concatenate(car.in_boundary[1:]) if n >= 1 else np.zeros(0, bool)
        labels = kernels.component_labels(active.shape[1], car.cell_edges, active.astype(np.uint8))
        inner = _interior(labels, active, marked).astype(np.uint8)
        masks = [
            inner[:, car.cell_offset[q]: car.cell_offset[q + 1]] for q in range(1, n + 1)
        ]
        return _betti_from_masks(_shift_facets(shifted_facets), masks, p)
    raise ValueError(f"unknown quantity {quantity!r}")


def _shift_facets(fs):
    # degree q of the shifted complex uses the facets of (q+1)-simplices
    return [None] + list(fs[1:])


def _active_parent_mask(fl: _FlagIndex, eps: np.ndarray, k: int) -> np.ndarray:
    car = fl.car
    S = len(eps)
    if k == 1:
        de = None
    else:
        de = (eps[:, car.facets[k]].sum(axis=2) & 1).astype(bool)
    act = np.zeros((S, fl.total_parents), dtype=bool)
    for q in range(k, car.n + 1):
        lo, hi = fl.parent_offset[q], fl.parent_offset[q + 1]
        if k == 1:
            vals = eps[:, car.verts[q]]
            act[:, lo:hi] = vals.min(axis=2) != vals.max(axis=2)
        else:
            act[:, lo:hi] = de[:, fl.kfaces(k, q)].any(axis=2)
    return act


def _evaluate_flags(car: _Carrier, eps: np.ndarray, k: int, quantity: str, p: int) -> np.ndarray:
    fl = car.flags
    act = _active_parent_mask(fl, eps, k)
    masks = [act[:, fl.minparent[r]].astype(np.uint8) for r in range(car.n + 1)]
    if quantity == "chiV":
        return sum((-1) ** r * masks[r].sum(axis=1).astype(np.int64) for r in range(car.n + 1))
    if quantity == "bV":
        return _betti_from_masks(fl.facets, masks, p)
    if quantity == "btV":
        if car.boundary is None:
            raise ValueError("btV needs a marked boundary")
        active = masks[0].astype(bool)
        labels = kernels.component_labels(active.shape[1], fl.edges, masks[0])
        inner = _interior(labels, active, fl.vertex_on_boundary)
        inner_masks = [m & inner[:, fl.first_vertex[r]] for r, m in enumerate(masks)]
        return _betti_from_masks(fl.facets, inner_masks, p)
    raise ValueError(f"quantity {quantity!r} is not available on the flag route")


def _evaluate(car: _Carrier, eps: np.ndarray, k: int, quantity: str, p: int, route: str | None):
    if quantity in ("bK0", "fK0") and k != 1:
        raise ValueError("K_0 is defined for k = 1 only")
    if route is None:
        route = "cells" if k == 1 else "flags"
    if route == "cells":
        if k != 1:
            raise ValueError("the cell route needs k = 1")
        return _evaluate_cells(car, eps, quantity, p)
    if route == "flags":
        if quantity in ("bK0", "fK0"):
            return _evaluate_cells(car, eps, quantity, p)
        return _evaluate_flags(car, eps, k, quantity, p)
    raise ValueError(f"unknown route {route!r}")


def _check_args(K: SimplicialComplex, k: int, quantity: str, p: int) -> None:
    if quantity in ("bK0", "fK0"):
        # vertex cochains make sense on any nonempty complex
        if k != 1 or K.is_empty():
            raise ValueError("K_0 quantities need k = 1 on a nonempty complex")
    elif not 1 <= k <= K.dimension:
        raise ValueError(f"k = {k} outside 1..{K.dimension}")
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}")
    if p < 0:
        raise ValueError("p must be >= 0")


def evaluate_cochains(
    K: SimplicialComplex,
    k: int,
    p: int,
    quantity: str,
    cochains: np.ndarray,
    boundary: SimplicialComplex | None = None,
    route: str | None = None,
) -> np.ndarray:
    """Integer value of ``quantity`` for each row of ``cochains`` (bits on (k-1)-simplices)."""
    _check_args(K, k, quantity, p)
    eps = np.atleast_2d(np.asarray(cochains, dtype=np.uint8))
    return _evaluate(_carrier(K, boundary), eps, k, quantity, p, route)


def expect_exact(
    K: SimplicialComplex,
    k: int,
    p: int,
    measure: BernoulliMeasure,
    quantity: str,
    boundary: SimplicialComplex | None = None,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    route: str | None = None,
) -> ExpectationEstimate:
    """Exact expectation by enumerating every cochain with its product weight."""
    _check_args(K, k, quantity, p)
    N = len(K.simplices(k - 1))
    total = 2**N
    if total > budget:
        raise BudgetExceeded(
            f"{total} cochains exceed the enumeration budget {budget}; use Monte Carlo"
        )
    car = _carrier(K, boundary)
    sums = np.zeros(N + 1, dtype=np.int64)
    shifts = np.arange(N, dtype=np.int64)
    chunk = 1 << 14
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        eps = ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        vals = _evaluate(car, eps, k, quantity, p, route)
        zeros = N - eps.sum(axis=1)
        np.add.at(sums, zeros, vals)
    mean = sum(
        (Fraction(int(sums[z])) * measure.weight(z, N - z) for z in range(N + 1) if sums[z]),
        Fraction(0),
    )
    return ExpectationEstimate(mean=mean, mode="exact", samples=total)


def _block_stats(args):
    car, k, quantity, p, route, seed, b, count, width, nu = args
    eps = _sample_block(seed, b, width, nu)[:count]
    vals = _evaluate(car, eps, k, quantity, p, route)
    return int(vals.sum()), int((vals * vals).sum())


def _run_blocks(job, samples: int, threads: int, make_args) -> tuple[int, int]:
    nblocks = -(-samples // BLOCK)
    args = [make_args(b, min(BLOCK, samples - b * BLOCK)) for b in range(nblocks)]
    if threads > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, args))
    else:
        parts = [job(a) for a in args]
    return sum(x for x, _ in parts), sum(y for _, y in parts)


def _estimate(total: int, total_sq: int, samples: int, seed: int) -> ExpectationEstimate:
    mean = Fraction(total, samples)
    if samples > 1:
        var = (Fraction(total_sq) - samples * mean * mean) / (samples - 1)
        se = sqrt(max(float(var), 0.0) / samples)
    else:
        se = None
    return ExpectationEstimate(mean=mean, mode="monte-carlo", samples=samples, std_error=se, seed=seed)


def expect_monte_carlo(
    K: SimplicialComplex,
    k: int,
    p: int,
    measure: BernoulliMeasure,
    quantity: str,
    samples: int,
    seed: int,
    boundary: SimplicialComplex | None = None,
    threads: int = 1,
    route: str | None = None,
) -> ExpectationEstimate:
    """Sample mean and standard error; independent of ``threads``."""
    _check_args(K, k, quantity, p)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    car = _carrier(K, boundary)
    width = len(K.simplices(k - 1))
    total, total_sq = _run_blocks(
        _block_stats,
        samples,
        threads,
        lambda b, c: (car, k, quantity, p, route, seed, b, c, width, measure.nu),
    )
    return _estimate(total, total_sq, samples, seed)


def euler_identity_residual(
    K: SimplicialComplex, measure: BernoulliMeasure, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Fraction:
    """chi(K) + E chi(V) - [nu q_K(-nu) + (1-nu) q_K(nu-1)] with q_K(T) = sum f_p T^p."""
    nu = measure.nu
    f = K.f_vector().faces

    def q(t):
        return sum(fp * t**p for p, fp in enumerate(f))

    e = expect_exact(K, 1, 0, measure, "chiV", budget=budget).mean
    return K.euler_characteristic() + e - (nu * q(-nu) + (1 - nu) * q(nu - 1))


def simplex_carrier(n: int, d: int, budget: int = DEFAULT_TOP_CELL_BUDGET):
    """Sd^d(Delta_n) together with its subdivided boundary, tracked by the registry."""
    S = subdivide_iter(standard_simplex(n), d, budget=budget)
    return S.complex, S.image(boundary_complex(n))


# ---------------------------------------------------------------------------
# percolation


def _percolation_block(args):
    car, k, marks, seed, b, count, width, nu = args
    eps = _sample_block(seed, b, width, nu)[:count]
    if k == 1:
        nc = _cell_masks(car, eps)
        active = np.concatenate(nc[1:], axis=1).astype(bool)
        labels = kernels.component_labels(active.shape[1], car.cell_edges, active.astype(np.uint8))
        hit = _linked(labels, active, marks[0], marks[1])
    else:
        fl = car.flags
        act = _active_parent_mask(fl, eps, k)
        vmask = act[:, fl.vertex_gid]
        labels = kernels.component_labels(vmask.shape[1], fl.edges, vmask.astype(np.uint8))
        hit = _linked(labels, vmask, marks[2], marks[3])
    c = int(hit.sum())
    return c, c


def percolation_probability(
    n: int,
    m_prime: int,
    m: int,
    sigma: Simplex | int,
    k: int,
    measure: BernoulliMeasure,
    samples: int,
    seed: int,
    threads: int = 1,
    budget: int = DEFAULT_TOP_CELL_BUDGET,
) -> ExpectationEstimate:
    """Fraction of cochains whose V_eps joins the boundary of Delta_n to the boundary of sigma.

    ``sigma`` is a top simplex of Sd^{m'}(Delta_n), given by its vertices or
    by its index among the top simplices in lexicographic order.  Cochains
    live on Sd^m of Sd^{m'}(Delta_n) with the open cell sigma removed.
    """
    if m_prime < 1:
        raise ValueError("m' must be >= 1 so that sigma is a proper cell")
    if m < 0 or samples < 1:
        raise ValueError("need m >= 0 and samples >= 1")
    outer = subdivide_iter(standard_simplex(n), m_prime, budget=budget)
    tops = outer.complex.simplices(n)
    if isinstance(sigma, int):
        if not 0 <= sigma < len(tops):
            raise ValueError(f"cell index {sigma} outside 0..{len(tops) - 1}")
        sigma = tops[sigma]
    sigma = tuple(sorted(sigma))
    if sigma not in outer.complex or len(sigma) != n + 1:
        raise ValueError(f"{sigma} is not a top cell of Sd^{m_prime}(Delta_{n})")
    Kp = outer.complex.subcomplex(lambda s: s != sigma)
    edge_outer = outer.image(boundary_complex(n))
    edge_sigma = SimplicialComplex(sigma[:i] + sigma[i + 1:] for i in range(n + 1))
    inner = subdivide_iter(Kp, m, budget=budget)
    C = inner.complex
    B1, B2 = inner.image(edge_outer), inner.image(edge_sigma)
    if not 1 <= k <= C.dimension:
        raise ValueError(f"k = {k} outside 1..{C.dimension}")
    car = _carrier(C, None)
    cell_marks = [
        np.concatenate([np.array([s in B for s in C.simplices(q)], dtype=bool) for q in range(1, C.dimension + 1)])
        for B in (B1, B2)
    ]
    if k == 1:
        marks = (cell_marks[0], cell_marks[1], None, None)
    else:
        reg = car.flags.S.vertex_registry
        sd0 = car.flags.S.complex.simplices(0)
        vm = [np.array([reg[v] in B for (v,) in sd0], dtype=bool) for B in (B1, B2)]
        marks = (None, None, vm[0], vm[1])
    width = len(C.simplices(k - 1))
    total, total_sq = _run_blocks(
        _percolation_block,
        samples,
        threads,
        lambda b, c: (car, k, marks, seed, b, c, width, measure.nu),
    )
    return _estimate(total, total_sq, samples, seed)
