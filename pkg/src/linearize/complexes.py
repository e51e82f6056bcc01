"""Graded chain complexes over Q, their homology and Euler characteristics.

A complex stores one :class:`GradedModule` per homological degree and one
differential per source degree. The differential moves homological degree
by ``step``: ``-1`` for chain complexes (simplicial boundary) and ``+1``
for cochain-style complexes such as the cube of resolutions. Homology,
Euler characteristic and the cone are defined for either direction.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .laurent import LaurentPoly
from .matrix import RationalMatrix, ShapeError, rank

__all__ = [
    "GradedModule",
    "GradedChainComplex",
    "ChainMap",
    "HomologyTable",
    "NotAComplexError",
    "InvalidChainMapError",
    "gdim",
    "verify_complex",
    "verify_chain_map",
    "differential_ranks",
    "homology",
    "euler_characteristic",
    "cone",
    "shift",
]


class NotAComplexError(ValueError):
    """d∘d is nonzero, or a differential mixes q-degrees."""


class InvalidChainMapError(ValueError):
    """A map of complexes fails to commute with the differentials."""


@dataclass(frozen=True)
class GradedModule:
    """A graded Q-vector space given by the q-degree of each basis vector.

    Basis order is explicit and never rearranged; matrices index into it.
    """

    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def gdim(self) -> LaurentPoly:
        counts: dict[int, int] = defaultdict(int)
        for d in self.degrees:
            counts[d] += 1
        return LaurentPoly(counts)

    def shift(self, k: int) -> GradedModule:
        return GradedModule(tuple(d + k for d in self.degrees))

    def direct_sum(self, other: GradedModule) -> GradedModule:
        return GradedModule(self.degrees + other.degrees)

    __add__ = direct_sum

    def tensor(self, other: GradedModule) -> GradedModule:
        """Tensor product, basis ordered lexicographically (self index major)."""
        return GradedModule(tuple(a + b for a in self.degrees for b in other.degrees))

    __matmul__ = tensor

    def indices_by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for i, d in enumerate(self.degrees):
            out[d].append(i)
        return dict(out)


def gdim(m: GradedModule) -> LaurentPoly:
    """Graded dimension ``sum_n dim(V_n) q^n``."""
    return m.gdim()


_EMPTY = GradedModule()


class GradedChainComplex:
    """A bounded complex of graded modules with q-degree preserving differential.

    ``differentials[n]`` is the matrix of ``d: C_n -> C_{n+step}``, shaped
    ``dim C_{n+step} x dim C_n``. Missing entries mean the zero map.
    Shapes are not validated on construction; :func:`verify_complex`
    reports mismatches as :class:`ShapeError`.
    """

    __slots__ = ("modules", "differentials", "step")

    def __init__(self, modules: Mapping[int, GradedModule | Iterable[int]],
                 differentials: Mapping[int, RationalMatrix] | None = None,
                 step: int = -1):
        if step not in (-1, 1):
            raise ValueError(f"step must be -1 or +1, got {step}")
        self.modules = {
            int(n): m if isinstance(m, GradedModule) else GradedModule(tuple(m))
            for n, m in modules.items()
        }
        self.differentials = {
            int(n): d for n, d in (differentials or {}).items() if not d.is_zero()
        }
        self.step = step

    def module(self, n: int) -> GradedModule:
        return self.modules.get(n, _EMPTY)

    def dim(self, n: int) -> int:
        return self.module(n).dim

    def differential(self, n: int) -> RationalMatrix:
        d = self.differentials.get(n)
        if d is None:
            return RationalMatrix.zeros(self.dim(n + self.step), self.dim(n))
        return d

    def degrees(self) -> list[int]:
        """Homological degrees carrying a nonzero module, ascending."""
        return sorted(n for n, m in self.modules.items() if m.dim)

    @property
    def total_dim(self) -> int:
        return sum(m.dim for m in self.modules.values())

    def check_shapes(self) -> None:
        for n, d in self.differentials.items():
            want = (self.dim(n + self.step), self.dim(n))
            if d.shape != want:
                raise ShapeError(f"differential out of degree {n} has shape {d.shape}, expected {want}")

    def __repr__(self) -> str:
        dims = {n: self.dim(n) for n in self.degrees()}
        return f"GradedChainComplex(dims={dims}, step={self.step:+d})"


@dataclass(frozen=True)
class ChainMap:
    """Degree-preserving map of complexes; ``components[n]`` is ``target_n x source_n``."""

    source: GradedChainComplex
    target: GradedChainComplex
    components: Mapping[int, RationalMatrix] = field(default_factory=dict)

    def component(self, n: int) -> RationalMatrix:
        f = self.components.get(n)
        if f is None:
            return RationalMatrix.zeros(self.target.dim(n), self.source.dim(n))
        return f

    @classmethod
    def identity(cls, c: GradedChainComplex) -> ChainMap:
        return cls(c, c, {n: RationalMatrix.identity(c.dim(n)) for n in c.degrees()})

    @classmethod
    def zero(cls, source: GradedChainComplex, target: GradedChainComplex) -> ChainMap:
        return cls(source, target, {})


@dataclass(frozen=True)
class HomologyTable:
    """Bigraded dimensions ``{(n, m): dim}``; zero entries are dropped."""

    dims: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.dims.items():
            if v < 0:
                raise ValueError(f"negative homology dimension at {k}: {v}")
        object.__setattr__(self, "dims", {k: v for k, v in sorted(self.dims.items()) if v})

    def __getitem__(self, nm: tuple[int, int]) -> int:
        return self.dims.get(nm, 0)

    def __len__(self) -> int:
        return len(self.dims)

    def __eq__(self, other) -> bool:
        if isinstance(other, HomologyTable):
            return self.dims == other.dims
        if isinstance(other, Mapping):
            return self.dims == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.dims.items()))

    def items(self):
        return self.dims.items()

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def by_degree(self) -> dict[int, int]:
        """Total dimension per homological degree (Betti numbers for q-trivial complexes)."""
        out: dict[int, int] = defaultdict(int)
        for (n, _), v in self.dims.items():
            out[n] += v
        return dict(sorted(out.items()))

    def euler_characteristic(self) -> LaurentPoly:
        return LaurentPoly(((m, (-1) ** (n % 2) * v) for (n, m), v in self.dims.items()))

    def poincare(self) -> str:
        """Two-variable Poincaré polynomial ``sum dim * t^n q^m`` sorted by (n, m)."""
        if not self.dims:
            return "0"
        terms = []
        for (n, m), v in self.dims.items():
            factors = [_power("t", n), _power("q", m)]
            body = "*".join(f for f in factors if f)
            if not body:
                terms.append(str(v))
            elif v == 1:
                terms.append(body)
            else:
                terms.append(f"{v}*{body}")
        return " + ".join(terms)

    def to_json(self) -> list[dict]:
        return [{"n": n, "m": m, "dim": v} for (n, m), v in self.dims.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> HomologyTable:
        return cls({(int(e["n"]), int(e["m"])): int(e["dim"]) for e in data})


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _q_blocks(d: RationalMatrix, src: GradedModule, tgt: GradedModule):
    """Split ``d`` into per-q-degree blocks.

    Returns ``(blocks, ok)`` where ``ok`` is False if some entry joins basis
    vectors of different q-degree.
    """
    src_local = {}
    src_count: dict[int, int] = defaultdict(int)
    for i, m in enumerate(src.degrees):
        src_local[i] = src_count[m]
        src_count[m] += 1
    tgt_local = {}
    tgt_count: dict[int, int] = defaultdict(int)
    for i, m in enumerate(tgt.degrees):
        tgt_local[i] = tgt_count[m]
        tgt_count[m] += 1
    entries: dict[int, dict] = defaultdict(dict)
    ok = True
    for (i, j), v in d.items():
        m = src.degrees[j]
        if tgt.degrees[i] != m:
            ok = False
            continue
        entries[m][tgt_local[i], src_local[j]] = v
    blocks = {m: RationalMatrix(tgt_count[m], src_count[m], e) for m, e in entries.items()}
    return blocks, ok


def verify_complex(c: GradedChainComplex) -> bool:
    """True iff every ``d∘d`` vanishes and every differential preserves q-degree.

    Raises :class:`ShapeError` when matrix shapes do not match the modules.
    """
    c.check_shapes()
    for n, d in c.differentials.items():
        _, ok = _q_blocks(d, c.module(n), c.module(n + c.step))
        if not ok:
            return False
        nxt = c.differentials.get(n + c.step)
        if nxt is not None and not (nxt @ d).is_zero():
            return False
    return True


def verify_chain_map(f: ChainMap) -> bool:
    """True iff ``f`` commutes with the differentials and preserves q-degree."""
    src, tgt = f.source, f.target
    if src.step != tgt.step:
        raise ShapeError("source and target complexes have opposite step directions")
    src.check_shapes()
    tgt.check_shapes()
    degrees = set(src.degrees()) | set(tgt.degrees()) | set(f.components)
    for n in degrees:
        fn = f.component(n)
        if fn.shape != (tgt.dim(n), src.dim(n)):
            raise ShapeError(f"chain map component {n} has shape {fn.shape}, "
                             f"expected {(tgt.dim(n), src.dim(n))}")
        _, ok = _q_blocks(fn, src.module(n), tgt.module(n))
        if not ok:
            return False
    s = src.step
    for n in degrees:
        lhs = tgt.differential(n) @ f.component(n)
        rhs = f.component(n + s) @ src.differential(n)
        if lhs != rhs:
            return False
    return True


def differential_ranks(c: GradedChainComplex) -> dict[tuple[int, int], int]:
    """Rank of each q-degree block of each differential, keyed by (source degree, q)."""
    out = {}
    for n, d in c.differentials.items():
        blocks, ok = _q_blocks(d, c.module(n), c.module(n + c.step))
        if not ok:
            raise NotAComplexError(f"differential out of degree {n} does not preserve q-degree")
        for m, b in blocks.items():
            r = rank(b)
            if r:
                out[n, m] = r
    return out


def homology(c: GradedChainComplex, check: bool = True) -> HomologyTable:
    """Bigraded homology dimensions over Q.

    ``dim H_n^m = dim C_n^m - rank(d out of C_n^m) - rank(d into C_n^m)``,
    with every rank taken on a single q-degree block.
    """
    if check and not verify_complex(c):
        raise NotAComplexError("input is not a complex (d∘d != 0 or q-degree not preserved)")
    ranks = differential_ranks(c)
    dims = {}
    for n in c.degrees():
        for m, count in c.module(n).gdim().terms():
            h = count - ranks.get((n, m), 0) - ranks.get((n - c.step, m), 0)
            if h < 0:
                raise NotAComplexError(f"negative homology at ({n}, {m}); d∘d must be nonzero")
            if h:
                dims[n, m] = h
    return HomologyTable(dims)


def euler_characteristic(c: GradedChainComplex) -> LaurentPoly:
    """``sum_{n,m} (-1)^n dim(C_n^m) q^m`` from chain dimensions alone."""
    total = LaurentPoly()
    for n in c.degrees():
        g = c.module(n).gdim()
        total = total + (g if n % 2 == 0 else -g)
    return total


def shift(c: GradedChainComplex, homological: int = 0, q: int = 0) -> GradedChainComplex:
    """Translate homological degrees by ``homological`` and q-degrees by ``q``."""
    return GradedChainComplex(
        {n + homological: m.shift(q) for n, m in c.modules.items()},
        {n + homological: d for n, d in c.differentials.items()},
        step=c.step,
    )


def cone(f: ChainMap, check: bool = True) -> GradedChainComplex:
    """Mapping cone of ``f: V -> W``.

    In degree ``n`` the cone is ``V_{n+step} ⊕ W_n`` (V-basis first) with
    differential ``(v, w) -> (-d_V v, f(v) + d_W w)``, so that
    ``χ(cone f) = χ(W) - χ(V)``.
    """
    V, W = f.source, f.target
    if V.step != W.step:
        raise InvalidChainMapError("source and target complexes have opposite step directions")
    if check and not verify_chain_map(f):
        raise InvalidChainMapError("map does not commute with the differentials")
    s = V.step
    degrees = {n - s for n in V.degrees()} | set(W.degrees())
    modules = {n: V.module(n + s) + W.module(n) for n in degrees}
    diffs = {}
    for n in degrees:
        # source: V_{n+s} ⊕ W_n ; target: V_{n+2s} ⊕ W_{n+s}
        v_src, v_tgt = V.dim(n + s), V.dim(n + 2 * s)
        entries = {}
        for (i, j), x in V.differential(n + s).items():
            entries[i, j] = -x
        for (i, j), x in f.component(n + s).items():
            entries[v_tgt + i, j] = x
        for (i, j), x in W.differential(n).items():
            entries[v_tgt + i, v_src + j] = x
        if entries:
            diffs[n] = RationalMatrix(v_tgt + W.dim(n + s), modules[n].dim, entries)
    return GradedChainComplex(modules, diffs, step=s)
