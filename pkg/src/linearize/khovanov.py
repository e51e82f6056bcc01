"""Khovanov homology from the cube of resolutions.

Each resolution ``r`` of an ``n``-crossing diagram contributes
``A^{⊗k}`` (``k`` circles) in homological degree ``|r| - x`` with every
q-degree shifted by ``2x - y - |r|``. Edges of the cube raise one bit
from 0 to 1 and act by multiplication (two circles merge) or
comultiplication (one circle splits), with sign
``(-1)^(number of 1-bits before the flipped one)``. The differential
raises homological degree, so the complex is built with ``step=+1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import (
    GradedChainComplex,
    GradedModule,
    HomologyTable,
    euler_characteristic,
    homology,
)
from .laurent import LaurentPoly
from .linkdiag import PDCode, circle_membership, crossing_signs
from .matrix import RationalMatrix, kron

__all__ = [
    "FrobeniusAlgebraA",
    "A",
    "CubeVertex",
    "KhovanovComplex",
    "build_cube",
    "khovanov_homology",
    "graded_euler",
]

ONE, X = 0, 1


class FrobeniusAlgebraA:
    """The algebra ``Q·1 ⊕ Q·X`` with ``deg 1 = -1``, ``deg X = +1``.

    Basis index 0 is the unit ``1``, index 1 is ``X``. Tensor powers use
    the lexicographic basis of ``{1, X}^k``.
    """

    degrees = (-1, 1)
    names = ("1", "X")

    @staticmethod
    def multiply(u: int, v: int) -> dict[int, int]:
        """``1·1 = 1``, ``1·X = X·1 = X``, ``X·X = 0``."""
        if u == X and v == X:
            return {}
        return {u | v: 1}

    @staticmethod
    def comultiply(u: int) -> dict[tuple[int, int], int]:
        """``Δ(1) = 1⊗X + X⊗1``, ``Δ(X) = X⊗X``."""
        if u == ONE:
            return {(ONE, X): 1, (X, ONE): 1}
        return {(X, X): 1}

    @staticmethod
    def counit(u: int) -> int:
        return 1 if u == X else 0

    @classmethod
    def module(cls, k: int = 1) -> GradedModule:
        m = GradedModule((0,))
        for _ in range(k):
            m = m.tensor(GradedModule(cls.degrees))
        return m

    @classmethod
    def m_matrix(cls) -> RationalMatrix:
        """``M: A⊗A -> A`` as a 2x4 matrix."""
        entries = {}
        for u, v in itertools.product((ONE, X), repeat=2):
            for w, c in cls.multiply(u, v).items():
                entries[w, 2 * u + v] = c
        return RationalMatrix(2, 4, entries)

    @classmethod
    def delta_matrix(cls) -> RationalMatrix:
        """``Δ: A -> A⊗A`` as a 4x2 matrix."""
        entries = {}
        for u in (ONE, X):
            for (v, w), c in cls.comultiply(u).items():
                entries[2 * v + w, u] = c
        return RationalMatrix(4, 2, entries)

    @classmethod
    def unit_matrix(cls) -> RationalMatrix:
        return RationalMatrix(2, 1, {(ONE, 0): 1})

    @classmethod
    def counit_matrix(cls) -> RationalMatrix:
        return RationalMatrix(1, 2, {(0, X): 1})

    @classmethod
    def swap_matrix(cls) -> RationalMatrix:
        return RationalMatrix(4, 4, {(2 * v + u, 2 * u + v): 1 for u in (0, 1) for v in (0, 1)})

    @classmethod
    def identity(cls) -> RationalMatrix:
        return RationalMatrix.identity(2)

    @classmethod
    def kron(cls, *ms: RationalMatrix) -> RationalMatrix:
        out = ms[0]
        for m in ms[1:]:
            out = kron(out, m)
        return out


A = FrobeniusAlgebraA


@dataclass(frozen=True)
class CubeVertex:
    resolution: tuple[int, ...]
    circle_count: int
    circle_membership: dict[int, int]

    @property
    def height(self) -> int:
        return sum(self.resolution)


@dataclass(frozen=True)
class KhovanovComplex:
    """The complex ``C(D)`` and where each cube vertex sits in it.

    ``vertex_index[r] = (homological degree, offset of r's block)``.
    """

    underlying: GradedChainComplex
    diagram: PDCode
    vertex_index: dict[tuple[int, ...], tuple[int, int]]
    vertices: dict[tuple[int, ...], CubeVertex]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _edge_entries(d: PDCode, src: CubeVertex, tgt: CubeVertex, i: int, sign: int,
                  row_off: int, col_off: int, entries: dict) -> None:
    a, b, c, dd = d.crossings[i]
    k, k2 = src.circle_count, tgt.circle_count
    ms, mt = src.circle_membership, tgt.circle_membership
    free = d.free_circles
    edge_src = k - free
    # unaffected circles: source circle index -> target circle index
    moved = {}
    for e, j in ms.items():
        if j not in moved:
            moved[j] = mt[e]
    for t in range(free):
        moved[edge_src + t] = k2 - free + t

    def bitpos(j, total):
        return total - 1 - j

    if k2 == k - 1:
        p, q_ = ms[a], ms[c]
        s = mt[a]
        others = [(bitpos(j, k), bitpos(moved[j], k2)) for j in range(k) if j not in (p, q_)]
        pp, pq, ps = bitpos(p, k), bitpos(q_, k), bitpos(s, k2)
        for x in range(1 << k):
            xp, xq = (x >> pp) & 1, (x >> pq) & 1
            if xp and xq:
                continue
            y = (xp | xq) << ps
            for sb, tb in others:
                y |= ((x >> sb) & 1) << tb
            entries[row_off + y, col_off + x] = sign
    elif k2 == k + 1:
        p = ms[a]
        s, t = mt[a], mt[b]
        others = [(bitpos(j, k), bitpos(moved[j], k2)) for j in range(k) if j != p]
        pp, ps, pt = bitpos(p, k), bitpos(s, k2), bitpos(t, k2)
        for x in range(1 << k):
            base = 0
            for sb, tb in others:
                base |= ((x >> sb) & 1) << tb
            if (x >> pp) & 1:
                entries[row_off + (base | (1 << ps) | (1 << pt)), col_off + x] = sign
            else:
                entries[row_off + (base | (1 << pt)), col_off + x] = sign
                entries[row_off + (base | (1 << ps)), col_off + x] = sign
    else:
        raise ValueError(f"crossing {i + 1} changes circle count by {k2 - k}; diagram is not planar")


def build_cube(d: PDCode) -> KhovanovComplex:
    """Assemble ``C(D)`` from the 2^n resolutions of ``d``."""
    n = d.n
    x, y = crossing_signs(d)
    vertices: dict[tuple[int, ...], CubeVertex] = {}
    for r in itertools.product((0, 1), repeat=n):
        mem, k = circle_membership(d, r)
        vertices[r] = CubeVertex(r, k, mem)

    by_height: dict[int, list[tuple[int, ...]]] = {}
    for r in vertices:  # product() yields lexicographic order
        by_height.setdefault(sum(r), []).append(r)

    modules = {}
    vertex_index = {}
    for h, rs in by_height.items():
        degrees: list[int] = []
        for r in rs:
            vertex_index[r] = (h - x, len(degrees))
            k = vertices[r].circle_count
            shift = 2 * x - y - h
            degrees.extend(2 * _popcount(z) - k + shift for z in range(1 << k))
        modules[h - x] = GradedModule(tuple(degrees))

    diffs = {}
    for h in range(n):
        entries: dict = {}
        for r in by_height[h]:
            _, col_off = vertex_index[r]
            ones_before = 0
            for i in range(n):
                if r[i]:
                    ones_before += 1
                    continue
                r2 = r[:i] + (1,) + r[i + 1:]
                _, row_off = vertex_index[r2]
                sign = -1 if ones_before % 2 else 1
                _edge_entries(d, vertices[r], vertices[r2], i, sign, row_off, col_off, entries)
        src, tgt = modules[h - x], modules[h + 1 - x]
        diffs[h - x] = RationalMatrix._raw(tgt.dim, src.dim, entries)
    complex_ = GradedChainComplex(modules, diffs, step=1)
    return KhovanovComplex(complex_, d, vertex_index, vertices)


def khovanov_homology(d: PDCode, check: bool = True) -> HomologyTable:
    """Bigraded homology ``{(n, m): dim}`` of ``C(d)`` over Q."""
    return homology(build_cube(d).underlying, check=check)


def graded_euler(d: PDCode) -> LaurentPoly:
    """Graded Euler characteristic of ``C(d)``, from chain dimensions."""
    return euler_characteristic(build_cube(d).underlying)
