from fractions import Fraction
from math import comb

import pytest

import oracles
from barytile.complex import SimplicialComplex, boundary_complex, standard_simplex
from barytile.packing import (
    Packing,
    brute_force_lambda,
    e_upper_bound,
    lambda_lower_bound,
    lambda_packing,
    m_p_nu,
    mnp_rhs,
    monotony_check,
    pack_disjoint_sd,
    pack_disjoint_sd_tile,
    pack_overlap,
    pack_pattern,
    pack_tiled_complex,
    q_term,
    upper_bound_check,
    validate_packing,
)
from barytile.subdivision import subdivide
from barytile.tiling import sd_tile_tiling, single_tile, tile_boundary_sphere

HALF = Fraction(1, 2)


def disjoint_counts(n, s):
    """One top simplex plus 2^(...) j-simplices."""
    if s == 0:
        out = {n: 1}
        out.update({j: 2 ** (n - 1 - j) for j in range(n)})
    else:
        out = {n + 1 - s: 1}
        for j in range(n - s):
            out[j] = out.get(j, 0) + 2 ** (n - 1 - s - j)
    return out


def overlap_counts(n, s, p):
    out = {n + 1 - s + p: 1} if s >= p + 1 else {n: 2 ** (p - s)}
    if s <= n - 1:
        for j in range(p, min(n - 1 - s + p, n - 1) + 1):
            out[j] = out.get(j, 0) + 2 ** (n - 1 - s - j + p)
    return out


def tiled_counts(h, n, p):
    def tail(m):
        return int(2**m * sum(Fraction(h[s], 2**s) for s in range(m + 1)))

    if p == 0:
        out = {n: h[0] + h[1]}
        for j in range(n):
            out[j] = h[n + 1 - j] + tail(n - 1 - j)
    else:
        out = {n: h[p + 1] + tail(p)}
        for j in range(p, n):
            out[j] = h[n + 1 - j + p] + tail(n - 1 - j + p)
    return {k: v for k, v in out.items() if v}


def oracle_m(members, p, nu):
    """M_{p,nu} of the closure of ``members``, computed from oracle Betti numbers."""
    K = oracles.closure(members)
    b = oracles.betti(K) + [0] * 10
    f = list(oracles.f_vector(K)) + [0] * 10
    top = max(len(s) for s in K) - 1
    c = nu * (1 - nu) * (nu**p + (1 - nu) ** p)
    tail = sum((-1) ** (i + 1 - p) * (f[i] - b[i]) for i in range(p + 1, top + 1))
    return (nu ** (p + 1) + (1 - nu) ** (p + 1)) * b[p] + c * tail


def oracle_valid(members, threshold, boundary):
    sets = [frozenset(m) for m in members]
    bd = {frozenset(s) for s in boundary.all_simplices()} if boundary is not None else set()
    for i, a in enumerate(sets):
        if any(len(a & b) - 1 >= threshold for b in sets[i + 1:]):
            return False
        faces = {frozenset(f) for f in oracles.closure([a])}
        if any(len(f) - 1 >= threshold for f in faces & bd):
            return False
    return True


class TestConstructions:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_disjoint_sd(self, n):
        P = pack_disjoint_sd(n)
        assert P.counts_by_dimension() == disjoint_counts(n, 0)
        assert validate_packing(P).ok
        assert oracle_valid(P.members, 0, None)

    def test_example_counts(self):
        assert pack_disjoint_sd(3).descending_counts() == (1, 1, 2, 4)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_disjoint_tiles(self, n):
        for s in range(1, n + 2):
            P = pack_disjoint_sd_tile(n, s)
            assert P.counts_by_dimension() == disjoint_counts(n, s)
            assert validate_packing(P).ok
            assert oracle_valid(P.members, 0, P.boundary)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_overlap(self, n):
        for p in range(1, n):
            for s in range(n + 2):
                P = pack_overlap(n, s, p)
                assert P.counts_by_dimension() == overlap_counts(n, s, p)
                assert validate_packing(P).ok
                assert oracle_valid(P.members, p, P.boundary)

    def test_distinguished_is_a_flag(self):
        for n in range(2, 6):
            for p in range(1, n):
                for s in range(p + 1, n + 2):
                    dist, members = pack_pattern(n, s, p)
                    assert dist in members
                    sizes = [bin(m).count("1") for m in dist]
                    # faces of dimensions s-p-1 .. n, nested
                    assert sizes == list(range(s - p, n + 2))
                    assert all(a & b == a for a, b in zip(dist, dist[1:]))

    def test_preconditions(self):
        with pytest.raises(ValueError):
            pack_disjoint_sd(0)
        with pytest.raises(ValueError):
            pack_disjoint_sd_tile(2, 0)
        with pytest.raises(ValueError):
            pack_overlap(3, 0, 3)


class TestTiledComplex:
    def tilings(self):
        out = [single_tile(n, s) for n in range(1, 5) for s in range(n + 2)]
        out += [sd_tile_tiling(n, s) for n in range(1, 4) for s in range(n + 2)]
        out += [tile_boundary_sphere(m) for m in range(2, 5)]
        return out

    def test_counts_and_thresholds(self):
        for T in self.tilings():
            n = T.dimension
            S = subdivide(T.ambient)
            for p in range(n):
                P = pack_tiled_complex(T, S, p)
                assert P.counts_by_dimension() == tiled_counts(T.h_vector(), n, p)
                assert validate_packing(P).ok

    def test_invalid_inputs(self):
        T = single_tile(2)
        with pytest.raises(ValueError):
            pack_tiled_complex(T, subdivide(standard_simplex(3)), 0)
        with pytest.raises(ValueError):
            pack_tiled_complex(T, subdivide(T.ambient), 3)


class TestValidator:
    def test_reports_overlap(self):
        K = standard_simplex(2)
        P = Packing(K, ((0, 1), (1, 2)), 0)
        rep = validate_packing(P)
        assert not rep.ok and rep.pairs == [((0, 1), (1, 2), 0)]
        assert validate_packing(P, threshold=1).ok

    def test_reports_boundary_and_foreign(self):
        K = standard_simplex(2)
        P = Packing(K, ((0, 1, 2), (0, 3)), 1, boundary_complex(2))
        rep = validate_packing(P)
        assert rep.foreign == [(0, 3)]
        assert rep.boundary_hits == [((0, 1, 2), 1)]


class TestMp:
    def test_simplex_closed_forms(self):
        for n in range(1, 6):
            for nu in (Fraction(0), Fraction(1, 3), HALF, Fraction(1)):
                c0 = 1 + 2 * n * nu * (1 - nu)
                assert m_p_nu(standard_simplex(n), 0, nu) == c0
                for p in range(1, n):
                    c = nu * (1 - nu) * (nu**p + (1 - nu) ** p)
                    assert m_p_nu(standard_simplex(n), p, nu) == c * comb(n, p + 1)

    def test_circle(self):
        assert m_p_nu(boundary_complex(2), 0, HALF) == 2

    def test_empty(self):
        assert m_p_nu(SimplicialComplex(), 1, HALF) == 0

    def test_matches_oracle(self):
        for K in (boundary_complex(3), subdivide(standard_simplex(2)).complex, standard_simplex(4)):
            for p in range(K.dimension):
                got = m_p_nu(K, p, Fraction(1, 3))
                assert got == oracle_m(list(K.maximal_simplices()), p, Fraction(1, 3))


class TestBoundChecks:
    COMPLEXES = [standard_simplex(1), standard_simplex(2), boundary_complex(2), boundary_complex(3), standard_simplex(3)]

    def test_upper_bound(self):
        for K in self.COMPLEXES:
            for p in range(K.dimension + 1):
                for nu in (Fraction(0), Fraction(1, 3), HALF, Fraction(1)):
                    assert upper_bound_check(K, p, nu).ok

    def test_monotony(self):
        for K in self.COMPLEXES:
            top = K.maximal_simplices()[0]
            facet = SimplicialComplex([top])
            bd = SimplicialComplex(K.simplices(K.dimension - 1)) if K.dimension >= 1 else SimplicialComplex()
            for L in (SimplicialComplex(), bd, facet):
                for p in range(K.dimension + 1):
                    for nu in (Fraction(1, 3), HALF):
                        assert monotony_check(K, L, p, nu).ok

    def test_monotony_needs_subcomplex(self):
        with pytest.raises(ValueError):
            monotony_check(standard_simplex(1), standard_simplex(2), 0, HALF)


class TestLambda:
    # frozen exact values, cross-checked below against oracle recomputation
    FROZEN = {1: Fraction(0), 2: Fraction(1, 144), 3: Fraction(13, 864), 4: Fraction(97, 5184)}

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_frozen(self, d):
        assert lambda_lower_bound(2, 1, HALF, d).value == self.FROZEN[d]

    @pytest.mark.parametrize("d", [2, 3])
    def test_oracle_recomputation(self, d):
        P, boundary, _ = lambda_packing(2, 1, d)
        assert oracle_valid(P.members, 0, boundary)
        assert oracle_m(P.members, 1, HALF) / 6**d == self.FROZEN[d]

    def test_brute_force_d1(self):
        assert brute_force_lambda(2, 1, HALF, 1) == 0
        assert lambda_lower_bound(2, 1, HALF, 1).value <= brute_force_lambda(2, 1, HALF, 1)

    def test_brute_force_cap(self):
        from barytile.subdivision import BudgetExceeded

        with pytest.raises(BudgetExceeded):
            brute_force_lambda(2, 1, HALF, 2)

    def test_below_rhs_and_growing(self):
        rhs = mnp_rhs(2, 1, HALF).value
        vals = [self.FROZEN[d] for d in (1, 2, 3, 4)]
        assert vals == sorted(vals)
        assert all(v < rhs for v in vals)
        gaps = [rhs - v for v in vals]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))

    def test_higher_dimensions_validate(self):
        for n, p in ((3, 1), (3, 2), (4, 2)):
            r = lambda_lower_bound(n, p, HALF, 2)
            assert 0 < r.value < mnp_rhs(n, p, HALF).value

    def test_preconditions(self):
        with pytest.raises(ValueError):
            lambda_lower_bound(2, 2, HALF, 1)


class TestClosedForms:
    def test_rhs(self):
        assert mnp_rhs(2, 1, HALF).value == Fraction(1, 48)
        with pytest.raises(ValueError):
            mnp_rhs(1, 1, HALF)

    def test_q_term(self):
        assert q_term(2, 1, HALF) == Fraction(1, 4)

    def test_e_upper(self):
        r = e_upper_bound(2, 1, HALF)
        assert r.value == Fraction(11, 48)
        assert r.extra["q_term"] == Fraction(1, 4)
        lam = [lambda_lower_bound(2, 1, HALF, d) for d in (1, 2)]
        assert e_upper_bound(2, 1, HALF, lam, use_rhs=False).value == Fraction(1, 4) - Fraction(1, 144)

    def test_report_json(self):
        obj = mnp_rhs(2, 1, HALF).to_json_obj()
        assert obj["value"] == "1/48" and obj["nu"] == "1/2" and obj["kind"] == "mnp_rhs"
