"""Sparse matrices over Q with exact rank computation."""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

__all__ = ["RationalMatrix", "ShapeError", "kron", "rank"]

Scalar = Union[int, Fraction]


class ShapeError(ValueError):
    """Matrix dimensions do not fit together."""


def _norm(v) -> Scalar:
    if isinstance(v, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(v, int):
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


class RationalMatrix:
    """Immutable sparse ``rows x cols`` matrix with exact rational entries.

    Entries are kept as ``int`` when integral and ``Fraction`` otherwise;
    zeros are never stored. A matrix acts on column vectors, so a map
    from a space of dimension ``k`` to one of dimension ``m`` is ``m x k``.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Scalar] | Iterable = ()):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        data: dict[tuple[int, int], Scalar] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (i, j), v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = _norm(v)
            if v:
                data[i, j] = v
        self._entries = data

    @classmethod
    def _raw(cls, rows: int, cols: int, data: dict) -> RationalMatrix:
        # trusted constructor: data already normalized and zero-free
        m = cls.__new__(cls)
        m.rows, m.cols, m._entries = rows, cols, data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls._raw(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> RationalMatrix:
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), ncols,
                   (((i, j), v) for i, r in enumerate(rows) for j, v in enumerate(r)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._entries.get((i, j), 0)

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        out = dict(self._entries)
        for k, v in other._entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return RationalMatrix._raw(self.rows, self.cols, out)

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix._raw(self.rows, self.cols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self + (-other)

    def scale(self, c: Scalar) -> RationalMatrix:
        c = _norm(c)
        if not c:
            return RationalMatrix.zeros(self.rows, self.cols)
        return RationalMatrix._raw(self.rows, self.cols,
                                   {k: _norm(c * v) for k, v in self._entries.items()})

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], Scalar] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                out[i, j] = out.get((i, j), 0) + a * b
        return RationalMatrix._raw(self.rows, other.cols,
                                   {k: _norm(v) for k, v in out.items() if v})

    def transpose(self) -> RationalMatrix:
        return RationalMatrix._raw(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    @property
    def T(self) -> RationalMatrix:
        return self.transpose()

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> RationalMatrix:
        """Restrict to the given rows and columns, renumbered in the given order."""
        rmap = {r: n for n, r in enumerate(row_idx)}
        cmap = {c: n for n, c in enumerate(col_idx)}
        data = {}
        for (i, j), v in self._entries.items():
            ri = rmap.get(i)
            if ri is None:
                continue
            cj = cmap.get(j)
            if cj is not None:
                data[ri, cj] = v
        return RationalMatrix._raw(len(row_idx), len(col_idx), data)

    def rank(self) -> int:
        return rank(self)


def kron(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Kronecker product; index ``(i, j)`` of ``a`` is the major one."""
    data = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            data[i * b.rows + k, j * b.cols + l] = _norm(x * y)
    return RationalMatrix._raw(a.rows * b.rows, a.cols * b.cols, data)


def _integer_rows(m: RationalMatrix) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, Scalar]] = {}
    for (i, j), v in m.items():
        rows.setdefault(i, {})[j] = v
    out = {}
    for i, row in rows.items():
        den = lcm(*(v.denominator for v in row.values() if isinstance(v, Fraction))) \
            if any(isinstance(v, Fraction) for v in row.values()) else 1
        ints = {j: int(v * den) for j, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {j: v // g for j, v in ints.items()}
        out[i] = ints
    return out


def rank(m: RationalMatrix) -> int:
    """Rank over Q by sparse fraction-free elimination.

    Rows are scaled to primitive integer vectors. Each step takes the
    currently shortest row as pivot row, and in it the entry of smallest
    magnitude (ties broken by shortest column) as pivot. Other rows are
    updated as ``p*row - row[c]*pivot_row`` and divided by their content,
    which keeps entries small without ever forming fractions.
    """
    if m.rows == 0 or m.cols == 0 or m.nnz == 0:
        return 0
    if m.rows > m.cols:
        m = m.transpose()
    rows = _integer_rows(m)
    col_rows: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            col_rows.setdefault(j, set()).add(i)
    heap = [(len(row), i) for i, row in rows.items()]
    heapq.heapify(heap)
    r = 0
    while heap:
        length, p = heapq.heappop(heap)
        prow = rows.get(p)
        if prow is None or len(prow) != length:
            continue  # stale heap entry
        if not prow:
            del rows[p]
            continue
        c = min(prow, key=lambda j: (abs(prow[j]), len(col_rows[j])))
        pv = prow[c]
        del rows[p]
        for j in prow:
            col_rows[j].discard(p)
        r += 1
        for i in list(col_rows[c]):
            row = rows[i]
            f = row[c]
            if pv == 1 or pv == -1:
                mult, a = 1, f * pv
            else:
                g = gcd(pv, f)
                mult, a = pv // g, f // g
            if mult != 1:
                for j in row:
                    row[j] *= mult
            for j, v in prow.items():
                nv = row.get(j, 0) - a * v
                if nv:
                    if j not in row:
                        col_rows[j].add(i)
                    row[j] = nv
                else:
                    if j in row:
                        del row[j]
                        col_rows[j].discard(i)
            if mult != 1 and row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    for j in row:
                        row[j] //= g
            heapq.heappush(heap, (len(row), i))
        del col_rows[c]
    return r
