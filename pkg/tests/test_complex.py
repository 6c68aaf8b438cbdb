import json

import pytest
from hypothesis import given

import oracles
from barytile.complex import (
    SimplicialComplex,
    as_simplex,
    boundary_complex,
    cone,
    faces_of,
    facets_of,
    parse_builtin,
    skeleton,
    standard_simplex,
)
from strategies import complexes


def as_sets(K):
    return {frozenset(s) for s in K.all_simplices()}


class TestSimplex:
    def test_as_simplex_sorts_and_rejects_repeats(self):
        assert as_simplex([3, 1, 2]) == (1, 2, 3)
        with pytest.raises(ValueError):
            as_simplex([1, 1])
        with pytest.raises(ValueError):
            as_simplex([])

    def test_faces(self):
        assert facets_of((0, 1, 2)) == [(0, 1), (0, 2), (1, 2)]
        assert len(list(faces_of((0, 1, 2, 3)))) == 15


class TestComplex:
    def test_standard_simplex_f_vector(self):
        assert standard_simplex(3).f_vector().faces == (4, 6, 4, 1)
        assert standard_simplex(3).f_vector().f(-1) == 1

    def test_boundary_and_euler(self):
        for n in range(1, 6):
            S = boundary_complex(n)
            assert S.dimension == n - 1
            assert S.euler_characteristic() == 1 + (-1) ** (n - 1)

    def test_closure_matches_oracle(self):
        K = SimplicialComplex([(0, 1, 2), (2, 3), (4,)])
        assert as_sets(K) == oracles.closure([(0, 1, 2), (2, 3), (4,)])
        assert K.maximal_simplices() == [(0, 1, 2), (2, 3), (4,)]

    def test_empty(self):
        K = SimplicialComplex()
        assert K.is_empty() and K.dimension == -1
        assert K.f_vector().faces == ()

    def test_subcomplex_requires_closure(self):
        K = standard_simplex(2)
        with pytest.raises(ValueError):
            K.subcomplex(lambda s: len(s) != 1)
        assert K.subcomplex(lambda s: s != (0, 1, 2)) == boundary_complex(2)

    def test_induced_and_skeleton(self):
        K = standard_simplex(3)
        assert K.induced([0, 1, 2]) == standard_simplex(2)
        assert skeleton(K, 1).f_vector().faces == (4, 6)

    def test_cone(self):
        C = cone(boundary_complex(2), 9)
        assert C.f_vector().faces == (4, 6, 3)
        with pytest.raises(ValueError):
            cone(standard_simplex(2), 1)

    def test_json_round_trip(self, tmp_path):
        K = SimplicialComplex([(0, 1, 2), (2, 3)])
        assert SimplicialComplex.from_json(K.to_json()) == K
        path = tmp_path / "k.json"
        path.write_text(K.to_json())
        assert parse_builtin(f"from-file:{path}") == K
        assert parse_builtin(str(path)) == K

    def test_malformed_json(self):
        with pytest.raises(ValueError):
            SimplicialComplex.from_json("{not json")
        with pytest.raises(ValueError):
            SimplicialComplex.from_json(json.dumps({"simplices": "nope"}))

    def test_builtin_specs(self):
        assert parse_builtin("simplex:2") == standard_simplex(2)
        assert parse_builtin("boundary-simplex:3") == boundary_complex(3)
        # unknown kinds are read as paths
        with pytest.raises(OSError):
            parse_builtin("torus:2")


class TestProperties:
    @given(complexes())
    def test_face_closed(self, K):
        S = as_sets(K)
        for s in S:
            for v in s:
                if len(s) > 1:
                    assert s - {v} in S

    @given(complexes())
    def test_f_vector_matches_oracle(self, K):
        assert K.f_vector().faces == oracles.f_vector(as_sets(K))

    @given(complexes())
    def test_euler_is_alternating_sum(self, K):
        f = K.f_vector().faces
        assert K.euler_characteristic() == sum((-1) ** i * x for i, x in enumerate(f))

    @given(complexes())
    def test_json_round_trip(self, K):
        assert SimplicialComplex.from_json(K.to_json()) == K
