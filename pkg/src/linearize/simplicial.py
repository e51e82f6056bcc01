"""Finite abstract simplicial complexes and their rational homology."""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

from .complexes import GradedChainComplex, GradedModule, homology
from .matrix import RationalMatrix

__all__ = [
    "SimplicialComplex",
    "euler_char_counts",
    "boundary_complex",
    "betti_numbers",
    "disjoint_union",
    "product",
    "point",
    "simplex",
    "sphere",
]


def _natural_key(name: str):
    try:
        return (0, int(name), "")
    except ValueError:
        return (1, 0, name)


class SimplicialComplex:
    """A face-closed family of simplices on an ordered vertex set.

    Vertices are opaque strings. Internally a simplex is a strictly
    increasing tuple of vertex *positions*, so "sorted" always means sorted
    by the vertex order given at construction (natural order by default).
    Faces of the input are added automatically.
    """

    __slots__ = ("vertices", "_index", "_simplices")

    def __init__(self, simplices: Iterable[Iterable], vertices: Sequence | None = None):
        facets = [tuple(str(v) for v in s) for s in simplices]
        names = {v for s in facets for v in s}
        if vertices is None:
            order = sorted(names, key=_natural_key)
        else:
            order = [str(v) for v in vertices]
            if len(set(order)) != len(order):
                raise ValueError("duplicate vertex in vertex order")
            missing = names - set(order)
            if missing:
                raise ValueError(f"simplices use vertices not in the vertex order: {sorted(missing)}")
        self.vertices: tuple[str, ...] = tuple(order)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        by_dim: dict[int, set[tuple[int, ...]]] = {}
        for v in range(len(self.vertices)):
            by_dim.setdefault(0, set()).add((v,))
        for s in facets:
            if not s:
                continue
            idx = tuple(sorted(self._index[v] for v in s))
            if len(set(idx)) != len(idx):
                raise ValueError(f"repeated vertex in simplex {s}")
            self._add_closed(idx, by_dim)
        self._simplices = {n: tuple(sorted(ss)) for n, ss in by_dim.items() if ss}

    @staticmethod
    def _add_closed(idx: tuple[int, ...], by_dim: dict[int, set]) -> None:
        k = len(idx)
        if idx in by_dim.get(k - 1, ()):
            return
        for r in range(1, k + 1):
            level = by_dim.setdefault(r - 1, set())
            level.update(itertools.combinations(idx, r))

    # -- queries ---------------------------------------------------------

    @property
    def dimension(self) -> int:
        return max(self._simplices, default=-1)

    def is_empty(self) -> bool:
        return not self.vertices

    def indexed(self, n: int) -> tuple[tuple[int, ...], ...]:
        """n-simplices as sorted tuples of vertex positions, in basis order."""
        return self._simplices.get(n, ())

    def simplices(self, n: int) -> list[tuple[str, ...]]:
        return [tuple(self.vertices[i] for i in s) for s in self.indexed(n)]

    def f_vector(self) -> list[int]:
        return [len(self.indexed(n)) for n in range(self.dimension + 1)]

    def facets(self) -> list[tuple[str, ...]]:
        """Maximal simplices."""
        out = []
        for n in range(self.dimension, -1, -1):
            above = self._simplices.get(n + 1, ())
            covered = {f for s in above for f in itertools.combinations(s, n + 1)}
            out.extend(tuple(self.vertices[i] for i in s)
                       for s in self.indexed(n) if s not in covered)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self._simplices == other._simplices

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self._simplices.items()))))

    def __repr__(self) -> str:
        return f"SimplicialComplex(f_vector={self.f_vector()})"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"simplices": [list(s) for s in self.facets()]}

    @classmethod
    def from_json(cls, data) -> SimplicialComplex:
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "simplices" not in data:
            raise ValueError('expected a JSON object with a "simplices" list')
        simplices = data["simplices"]
        if not isinstance(simplices, list) or not all(isinstance(s, list) for s in simplices):
            raise ValueError('"simplices" must be a list of vertex lists')
        return cls(simplices)


def point() -> SimplicialComplex:
    return SimplicialComplex([["0"]])


def simplex(n: int) -> SimplicialComplex:
    """The full n-simplex on vertices 0..n."""
    return SimplicialComplex([list(range(n + 1))])


def sphere(n: int) -> SimplicialComplex:
    """S^n as the boundary of the (n+1)-simplex; ``sphere(1)`` is the 3-cycle."""
    if n < 0:
        raise ValueError("sphere dimension must be nonnegative")
    verts = list(range(n + 2))
    return SimplicialComplex(itertools.combinations(verts, n + 1))


def euler_char_counts(k: SimplicialComplex) -> int:
    """Alternating count of simplices."""
    return sum((-1) ** n * c for n, c in enumerate(k.f_vector()))


def boundary_complex(k: SimplicialComplex) -> GradedChainComplex:
    """Simplicial chain complex over Q, every basis vector in q-degree 0.

    ``d[v0..vn] = sum_i (-1)^i [v0..^vi..vn]``.
    """
    modules = {n: GradedModule((0,) * len(k.indexed(n))) for n in range(k.dimension + 1)}
    diffs = {}
    for n in range(1, k.dimension + 1):
        rows = {s: i for i, s in enumerate(k.indexed(n - 1))}
        entries = {}
        for j, s in enumerate(k.indexed(n)):
            for i in range(n + 1):
                entries[rows[s[:i] + s[i + 1:]], j] = -1 if i % 2 else 1
        diffs[n] = RationalMatrix(len(rows), len(k.indexed(n)), entries)
    return GradedChainComplex(modules, diffs, step=-1)


def betti_numbers(k: SimplicialComplex) -> dict[int, int]:
    """Rational Betti numbers ``{n: dim H_n}``; zero entries omitted."""
    return homology(boundary_complex(k)).by_degree()


def disjoint_union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Disjoint union; vertices are renamed ``L/<v>`` and ``R/<v>``."""
    verts = [f"L/{v}" for v in a.vertices] + [f"R/{v}" for v in b.vertices]
    facets = [[f"L/{v}" for v in s] for s in a.facets()]
    facets += [[f"R/{v}" for v in s] for s in b.facets()]
    return SimplicialComplex(facets, vertices=verts)


def _staircases(p: int, q: int):
    """Monotone lattice paths from (0, 0) to (p, q) as vertex-pair sequences."""
    for rights in itertools.combinations(range(p + q), p):
        i = j = 0
        path = [(0, 0)]
        rs = set(rights)
        for step in range(p + q):
            if step in rs:
                i += 1
            else:
                j += 1
            path.append((i, j))
        yield path


def product(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Shuffle (staircase) triangulation of ``|a| x |b|``.

    Product vertices are pairs named ``(u,v)`` and ordered lexicographically
    by the factors' vertex orders, which makes every staircase simplex of
    ``sigma x tau`` an increasing chain.
    """
    if a.is_empty() or b.is_empty():
        raise ValueError("product of simplicial complexes needs both factors nonempty")
    verts = [f"({u},{v})" for u in a.vertices for v in b.vertices]
    facets = []
    for s in a.facets():
        si = [a._index[v] for v in s]
        for t in b.facets():
            ti = [b._index[v] for v in t]
            for path in _staircases(len(si) - 1, len(ti) - 1):
                facets.append([verts[si[i] * len(b.vertices) + ti[j]] for i, j in path])
    return SimplicialComplex(facets, vertices=verts)
