"""Finite abstract simplicial complexes.

A simplex is a strictly increasing tuple of non-negative vertex ids.  A
:class:`SimplicialComplex` stores its simplices per dimension and is
immutable once built.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Simplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical form of a vertex set; rejects duplicates and negatives."""
    s = tuple(sorted(int(v) for v in vertices))
    if not s:
        raise ValueError("empty simplex")
    if s[0] < 0:
        raise ValueError(f"negative vertex id in {s}")
    if any(a == b for a, b in zip(s, s[1:])):
        raise ValueError(f"repeated vertex in {s}")
    return s


def facets_of(s: Simplex) -> list[Simplex]:
    """Facets of ``s`` in lexicographic order (empty for a vertex)."""
    if len(s) == 1:
        return []
    return sorted(s[:i] + s[i + 1:] for i in range(len(s)))


def faces_of(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of ``s``, including ``s`` itself."""
    for r in range(1, len(s) + 1):
        yield from combinations(s, r)


@dataclass(frozen=True)
class FVector:
    """Face numbers ``(f_{-1}, f_0, ..., f_n)``; ``f_{-1}`` is a convention slot."""

    entries: tuple[int, ...]

    def f(self, i: int) -> int:
        if i < -1:
            raise IndexError(i)
        j = i + 1
        return self.entries[j] if j < len(self.entries) else 0

    @property
    def faces(self) -> tuple[int, ...]:
        return self.entries[1:]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


class SimplicialComplex:
    """Immutable face-closed set of simplices.

    The constructor closes the given simplices under taking faces.  The empty
    complex has dimension -1.
    """

    __slots__ = ("_by_dim", "_sets", "_cache")

    def __init__(self, simplices: Iterable[Iterable[int]] = ()):
        levels: dict[int, set[Simplex]] = {}
        for raw in simplices:
            s = as_simplex(raw)
            levels.setdefault(len(s) - 1, set()).add(s)
        top = max(levels, default=-1)
        sets = [levels.get(p, set()) for p in range(top + 1)]
        # close downward one dimension at a time
        for p in range(top, 0, -1):
            below = sets[p - 1]
            for s in sets[p]:
                for i in range(p + 1):
                    below.add(s[:i] + s[i + 1:])
        self._sets = tuple(frozenset(x) for x in sets)
        self._by_dim = tuple(tuple(sorted(x)) for x in sets)
        self._cache: dict = {}

    @classmethod
    def _from_closed(cls, by_dim: Sequence[Iterable[Simplex]]) -> "SimplicialComplex":
        # trusted constructor for callers that already hold a face-closed family
        obj = cls.__new__(cls)
        lists = [tuple(sorted(x)) for x in by_dim]
        while lists and not lists[-1]:
            lists.pop()
        obj._by_dim = tuple(lists)
        obj._sets = tuple(frozenset(x) for x in lists)
        obj._cache = {}
        return obj

    # -- basic queries -------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self._by_dim) - 1

    @property
    def vertex_count(self) -> int:
        return len(self._by_dim[0]) if self._by_dim else 0

    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    def simplices(self, p: int) -> tuple[Simplex, ...]:
        """Simplices of dimension ``p`` in lexicographic order."""
        if 0 <= p < len(self._by_dim):
            return self._by_dim[p]
        return ()

    def all_simplices(self) -> Iterator[Simplex]:
        for level in self._by_dim:
            yield from level

    def index(self, p: int) -> dict[Simplex, int]:
        """Position of each ``p``-simplex in :meth:`simplices` order."""
        key = ("index", p)
        if key not in self._cache:
            self._cache[key] = {s: i for i, s in enumerate(self.simplices(p))}
        return self._cache[key]

    def __contains__(self, s) -> bool:
        s = tuple(s)
        p = len(s) - 1
        return 0 <= p < len(self._sets) and s in self._sets[p]

    def __len__(self) -> int:
        return sum(len(x) for x in self._by_dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._sets == other._sets

    def __hash__(self) -> int:
        return hash(self._sets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dimension}, f={self.f_vector().faces})"

    def is_empty(self) -> bool:
        return not self._by_dim

    def f_vector(self, f_minus_one: int = 1) -> FVector:
        return FVector((f_minus_one,) + tuple(len(x) for x in self._by_dim))

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * len(x) for p, x in enumerate(self._by_dim))

    def maximal_simplices(self) -> list[Simplex]:
        """Simplices that are not a facet of another one, sorted lexicographically."""
        covered: set[Simplex] = set()
        for p in range(1, len(self._by_dim)):
            for s in self._by_dim[p]:
                for i in range(p + 1):
                    covered.add(s[:i] + s[i + 1:])
        return sorted(s for s in self.all_simplices() if s not in covered)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other for s in self.all_simplices())

    def subcomplex(self, keep) -> "SimplicialComplex":
        """Simplices satisfying ``keep``; the predicate must select a face-closed family."""
        sub = SimplicialComplex._from_closed(
            [[s for s in level if keep(s)] for level in self._by_dim]
        )
        for s in sub.all_simplices():
            for t in facets_of(s):
                if t not in sub:
                    raise ValueError("selection is not closed under faces")
        return sub

    def induced(self, vertex_set) -> "SimplicialComplex":
        """Full subcomplex spanned by ``vertex_set``."""
        vs = set(vertex_set)
        return SimplicialComplex._from_closed(
            [[s for s in level if all(v in vs for v in s)] for level in self._by_dim]
        )

    # -- serialization -------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "maximal_simplices": [list(s) for s in self.maximal_simplices()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SimplicialComplex":
        try:
            tops = obj["maximal_simplices"]
        except (KeyError, TypeError) as exc:
            raise ValueError("complex JSON needs a 'maximal_simplices' list") from exc
        K = cls(tops)
        if "dimension" in obj and obj["dimension"] != K.dimension:
            raise ValueError(
                f"declared dimension {obj['dimension']} but simplices give {K.dimension}"
            )
        return K

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        return cls.from_json_obj(json.loads(text))


def f_vector(K: SimplicialComplex, f_minus_one: int) -> FVector:
    return K.f_vector(f_minus_one)


def standard_simplex(n: int) -> SimplicialComplex:
    if n < 0:
        raise ValueError("n must be >= 0")
    return SimplicialComplex([range(n + 1)])


def boundary_complex(n: int) -> SimplicialComplex:
    """The boundary of the standard n-simplex."""
    if n < 1:
        raise ValueError("the boundary of a point is empty; need n >= 1")
    full = tuple(range(n + 1))
    return SimplicialComplex(full[:i] + full[i + 1:] for i in range(n + 1))


def skeleton(K: SimplicialComplex, i: int) -> SimplicialComplex:
    if not 0 <= i <= K.dimension:
        raise ValueError(f"skeleton index {i} outside 0..{K.dimension}")
    return SimplicialComplex._from_closed([K.simplices(p) for p in range(i + 1)])


def cone(K: SimplicialComplex, apex: int) -> SimplicialComplex:
    if apex < 0:
        raise ValueError("apex must be a non-negative id")
    if (apex,) in K:
        raise ValueError(f"apex {apex} is already a vertex")
    levels: list[list[Simplex]] = [list(K.simplices(p)) for p in range(K.dimension + 2)]
    levels[0].append((apex,))
    for p in range(K.dimension + 1):
        for s in K.simplices(p):
            levels[p + 1].append(tuple(sorted(s + (apex,))))
    return SimplicialComplex._from_closed(levels)


def parse_builtin(spec: str) -> SimplicialComplex:
    """``simplex:n``, ``boundary-simplex:n`` or a path to a complex JSON file."""
    kind, _, arg = spec.partition(":")
    if kind == "simplex" and arg:
        return standard_simplex(int(arg))
    if kind == "boundary-simplex" and arg:
        return boundary_complex(int(arg))
    if kind == "from-file" and arg:
        spec = arg
    with open(spec) as fh:
        return SimplicialComplex.from_json(fh.read())
