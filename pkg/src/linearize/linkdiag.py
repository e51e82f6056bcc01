"""Planar link diagrams (PD codes), the Kauffman bracket and the Jones polynomial.

Conventions
-----------
* ``X(a, b, c, d)`` lists the four edge labels counterclockwise, starting
  at the incoming under-strand; the under-strand runs ``a -> c``.
* The 0-smoothing joins ``{a, b}`` and ``{c, d}``; the 1-smoothing joins
  ``{a, d}`` and ``{b, c}``.
* A crossing is positive when the over-strand runs ``d -> b`` and negative
  when it runs ``b -> d``.
* ``<D> = sum_r (-q^-1)^|r| (q + q^-1)^circles(r)`` and
  ``J(D) = (-1)^x q^(2x - y) <D>`` with ``x``/``y`` the numbers of
  negative/positive crossings.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .laurent import LaurentPoly, Q, QINV

__all__ = [
    "PDCode",
    "PDError",
    "CrossingSignData",
    "parse_pd",
    "circles",
    "circle_membership",
    "state_counts",
    "kauffman_bracket",
    "crossing_signs",
    "jones",
    "mirror",
    "relabel",
    "split_union",
    "skein_triple",
    "LOOP",
]

Crossing = tuple[int, int, int, int]
Resolution = tuple[int, ...]

LOOP = Q + QINV  # bracket of a single crossingless circle

UNDER_IN, OVER_B, UNDER_OUT, OVER_D = 0, 1, 2, 3


class PDError(ValueError):
    """Malformed or inconsistent planar diagram code."""


class CrossingSignData(NamedTuple):
    x: int  # negative crossings
    y: int  # positive crossings


def _slots(crossings: Sequence[Crossing]) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {}
    for ci, cr in enumerate(crossings):
        for p, e in enumerate(cr):
            out.setdefault(e, []).append((ci, p))
    return out


def _orient(crossings: Sequence[Crossing], hint: Sequence[int] | None = None) -> tuple[int, ...]:
    """For each crossing, the position (1 or 3) at which the over-strand enters.

    Under-strands fix the direction of every component they belong to;
    directions then propagate along edges (one end in, one out) and through
    crossings (opposite positions, one in, one out). A component that never
    passes under is oriented by edge-label succession, and if that is
    ambiguous (at most two edges) by entering at position 3 of its first
    crossing.
    """
    slots = _slots(crossings)
    state: dict[tuple[int, int], bool] = {}  # True: edge enters the crossing here

    def partner_edge(s):
        a, b = slots[crossings[s[0]][s[1]]]
        return b if a == s else a

    def assign(s, val, queue):
        old = state.get(s)
        if old is None:
            state[s] = val
            queue.append(s)
        elif old != val:
            raise PDError(f"inconsistent orientation at crossing {s[0] + 1}, position {s[1] + 1}")

    def propagate(queue):
        while queue:
            s = queue.pop()
            v = state[s]
            assign(partner_edge(s), not v, queue)
            assign((s[0], (s[1] + 2) % 4), not v, queue)

    queue: list = []
    for ci in range(len(crossings)):
        assign((ci, UNDER_IN), True, queue)
        assign((ci, UNDER_OUT), False, queue)
    propagate(queue)
    if hint is not None:
        for ci, p in enumerate(hint):
            if p not in (OVER_B, OVER_D):
                raise PDError(f"over-strand entry position must be 2 or 4, got {p + 1}")
            assign((ci, p), True, queue)
            propagate(queue)

    for ci, cr in enumerate(crossings):
        if (ci, OVER_B) in state:
            continue
        # component with no under-passes: use label succession along it
        comp = _component_labels(crossings, slots, (ci, OVER_B))
        order = sorted(comp)
        succ = {e: order[(i + 1) % len(order)] for i, e in enumerate(order)}
        b, d = cr[OVER_B], cr[OVER_D]
        d_first = succ[d] == b
        b_first = succ[b] == d
        if not d_first and not b_first:
            raise PDError(f"edge labels are not consecutive along the component through crossing {ci + 1}")
        assign((ci, OVER_D if d_first else OVER_B), True, queue)
        propagate(queue)

    return tuple(OVER_D if state[ci, OVER_D] else OVER_B for ci in range(len(crossings)))


def _component_labels(crossings, slots, start) -> set[int]:
    seen: set[int] = set()
    stack = [crossings[start[0]][start[1]]]
    while stack:
        e = stack.pop()
        if e in seen:
            continue
        seen.add(e)
        for ci, p in slots[e]:
            stack.append(crossings[ci][(p + 2) % 4])
    return seen


@dataclass(frozen=True)
class PDCode:
    """An oriented planar link diagram.

    ``over_in[i]`` is the position (1 for ``b``, 3 for ``d``) where the
    over-strand of crossing ``i`` enters. It is derived from the labels
    when omitted and only needs to be given for components whose direction
    the labels cannot determine.
    """

    crossings: tuple[Crossing, ...] = ()
    free_circles: int = 0
    over_in: tuple[int, ...] | None = None

    def __post_init__(self):
        crossings = tuple(tuple(int(x) for x in c) for c in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        if self.free_circles < 0:
            raise PDError("free_circles must be nonnegative")
        n = len(crossings)
        for ci, cr in enumerate(crossings):
            if len(cr) != 4:
                raise PDError(f"crossing {ci + 1} has {len(cr)} labels, expected 4")
            for e in cr:
                if not 1 <= e <= 2 * n:
                    raise PDError(f"label {e} in crossing {ci + 1} is outside 1..{2 * n}")
        counts = Counter(e for cr in crossings for e in cr)
        for e in range(1, 2 * n + 1):
            if counts[e] != 2:
                raise PDError(f"label {e} occurs {counts[e]} times, expected exactly 2")
        if self.over_in is not None and len(self.over_in) != n:
            raise PDError("over_in must have one entry per crossing")
        object.__setattr__(self, "over_in", _orient(crossings, self.over_in))

    @property
    def n(self) -> int:
        return len(self.crossings)

    def signs(self) -> tuple[int, ...]:
        """+1/-1 per crossing."""
        return tuple(1 if p == OVER_D else -1 for p in self.over_in)

    def writhe(self) -> int:
        return sum(self.signs())

    def components(self) -> int:
        """Number of link components, free circles included."""
        slots = _slots(self.crossings)
        seen: set[int] = set()
        count = self.free_circles
        for e in range(1, 2 * self.n + 1):
            if e not in seen:
                seen |= _component_labels(self.crossings, slots, slots[e][0])
                count += 1
        return count

    def __str__(self) -> str:
        parts = ["X({},{},{},{})".format(*c) for c in self.crossings]
        parts += ["O"] * self.free_circles
        return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:X\(\s*([^)]*)\)|(O)\b|(\S+))")


def parse_pd(text: str) -> PDCode:
    """Parse ``X(a,b,c,d)`` and ``O`` tokens separated by whitespace.

    Errors name the offending column (1-based) or crossing.
    """
    crossings = []
    free = 0
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PDError(f"unexpected input at column {pos + 1}")
        if m.group(3) is not None:
            raise PDError(f"unknown token {m.group(3)!r} at column {m.start(3) + 1}")
        if m.group(2):
            free += 1
        else:
            fields = [f.strip() for f in m.group(1).split(",")]
            if len(fields) != 4 or not all(re.fullmatch(r"\d+", f) for f in fields):
                raise PDError(f"crossing at column {m.start() + 1} needs four positive integer labels")
            crossings.append(tuple(int(f) for f in fields))
        pos = m.end()
    if not crossings and not free:
        raise PDError("empty diagram")
    return PDCode(tuple(crossings), free)


# -- circles and states --------------------------------------------------

def _smoothing_pairs(cr: Crossing, bit: int):
    a, b, c, d = cr
    return ((a, b), (c, d)) if bit == 0 else ((a, d), (b, c))


def circle_membership(d: PDCode, r: Resolution) -> tuple[dict[int, int], int]:
    """Circles of the resolved diagram.

    Returns ``(membership, k)``: ``membership`` maps each edge label to its
    circle index and ``k`` counts all circles, free ones included. Circles
    through edges are numbered by smallest label; free circles take the
    last indices.
    """
    if len(r) != d.n:
        raise ValueError(f"resolution has {len(r)} bits, diagram has {d.n} crossings")
    parent = list(range(2 * d.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr, bit in zip(d.crossings, r):
        if bit not in (0, 1):
            raise ValueError(f"resolution bits must be 0 or 1, got {bit}")
        for u, v in _smoothing_pairs(cr, bit):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    index: dict[int, int] = {}
    membership = {}
    for e in range(1, 2 * d.n + 1):
        root = find(e)
        if root not in index:
            index[root] = len(index)
        membership[e] = index[root]
    return membership, len(index) + d.free_circles


def circles(d: PDCode, r: Resolution) -> int:
    """Number of circles after smoothing every crossing as ``r`` says."""
    return circle_membership(d, r)[1]


def state_counts(d: PDCode) -> Counter:
    """``Counter{(|r|, circles(r)): number of resolutions}`` over all 2^n states.

    Walks the binary tree of partial resolutions with a union-find that is
    rolled back on the way up, so each state costs O(log n) rather than a
    fresh pass over the diagram.
    """
    n = d.n
    size = 2 * n + 1
    parent = list(range(size))
    rank = [0] * size
    history: list = []
    counts: Counter = Counter()
    labels = 2 * n

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(u, v) -> bool:
        ru, rv = find(u), find(v)
        if ru == rv:
            history.append(None)
            return False
        if rank[ru] < rank[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        bumped = rank[ru] == rank[rv]
        if bumped:
            rank[ru] += 1
        history.append((rv, ru, bumped))
        return True

    def undo():
        h = history.pop()
        if h is not None:
            rv, ru, bumped = h
            parent[rv] = rv
            if bumped:
                rank[ru] -= 1

    def walk(i: int, ones: int, comps: int):
        if i == n:
            counts[ones, comps + d.free_circles] += 1
            return
        for bit in (0, 1):
            merged = 0
            for u, v in _smoothing_pairs(d.crossings[i], bit):
                merged += union(u, v)
            walk(i + 1, ones + bit, comps - merged)
            undo()
            undo()

    walk(0, 0, labels)
    return counts


def kauffman_bracket(d: PDCode) -> LaurentPoly:
    """Full state sum ``sum_r (-q^-1)^|r| (q + q^-1)^circles(r)``."""
    total = LaurentPoly()
    loop_powers: dict[int, LaurentPoly] = {}
    for (ones, k), mult in state_counts(d).items():
        if k not in loop_powers:
            loop_powers[k] = LOOP ** k
        sign = -mult if ones % 2 else mult
        total = total + loop_powers[k].shift(-ones).scale(sign)
    return total


def crossing_signs(d: PDCode) -> CrossingSignData:
    s = d.signs()
    return CrossingSignData(x=s.count(-1), y=s.count(1))


def jones(d: PDCode) -> LaurentPoly:
    """``(-1)^x q^(2x - y) <D>``."""
    x, y = crossing_signs(d)
    b = kauffman_bracket(d).shift(2 * x - y)
    return -b if x % 2 else b


# -- diagram operations -------------------------------------------------

def _switch(cr: Crossing, over_in: int) -> tuple[Crossing, int]:
    """Swap over and under strands; returns the new tuple and its over_in."""
    a, b, c, dd = cr
    if over_in == OVER_D:
        # new under-strand enters at d; old under-strand enters at new position 1
        return (dd, a, b, c), OVER_B
    return (b, c, dd, a), OVER_D


def mirror(d: PDCode) -> PDCode:
    """Switch every crossing; the two smoothings trade places."""
    pairs = [_switch(cr, p) for cr, p in zip(d.crossings, d.over_in)]
    return PDCode(tuple(c for c, _ in pairs), d.free_circles, tuple(p for _, p in pairs))


def _relabeled(crossings: Sequence[Crossing], over_in: Sequence[int], free: int) -> PDCode:
    """Renumber edges 1..2n consecutively along each oriented component."""
    slots = _slots(crossings)
    head = {}
    for ci, (cr, p_in) in enumerate(zip(crossings, over_in)):
        head[cr[UNDER_IN]] = (ci, UNDER_IN)
        head[cr[p_in]] = (ci, p_in)
    if set(head) != set(slots):
        raise PDError("orientation leaves some edge without a head")
    new: dict[int, int] = {}
    for start in sorted(slots):
        e = start
        while e not in new:
            new[e] = len(new) + 1
            ci, p = head[e]
            e = crossings[ci][(p + 2) % 4]
    out = tuple(tuple(new[e] for e in cr) for cr in crossings)
    return PDCode(out, free, tuple(over_in))


def relabel(d: PDCode) -> PDCode:
    """Same diagram with edges renumbered consecutively along components."""
    return _relabeled(d.crossings, d.over_in, d.free_circles)


def split_union(d1: PDCode, d2: PDCode) -> PDCode:
    """Diagram of the split union: ``d2`` drawn beside ``d1``."""
    off = 2 * d1.n
    crossings = d1.crossings + tuple(tuple(e + off for e in cr) for cr in d2.crossings)
    return PDCode(crossings, d1.free_circles + d2.free_circles, d1.over_in + d2.over_in)


def skein_triple(d: PDCode, crossing_index: int) -> tuple[PDCode, PDCode, PDCode]:
    """``(L+, L-, L0)`` agreeing with ``d`` away from the chosen crossing.

    ``L+``/``L-`` carry the positive/negative version of the crossing and
    ``L0`` its orientation-respecting smoothing, so that
    ``q^2 J(L+) - q^-2 J(L-) = (q - q^-1) J(L0)``.
    """
    if not 0 <= crossing_index < d.n:
        raise IndexError(f"crossing index {crossing_index} out of range for {d.n} crossings")
    i = crossing_index
    cr, p = d.crossings[i], d.over_in[i]
    swapped, sp = _switch(cr, p)
    other = PDCode(d.crossings[:i] + (swapped,) + d.crossings[i + 1:], d.free_circles,
                   d.over_in[:i] + (sp,) + d.over_in[i + 1:])
    positive = p == OVER_D
    plus, minus = (d, other) if positive else (other, d)
    # the oriented smoothing is the 0-smoothing at a positive crossing, else the 1-smoothing
    pairs = _smoothing_pairs(cr, 0 if positive else 1)
    rest = [c for j, c in enumerate(d.crossings) if j != i]
    rest_in = [q for j, q in enumerate(d.over_in) if j != i]
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    remaining = Counter(e for c in rest for e in c)
    classes = {find(e) for pair in pairs for e in pair}
    free = d.free_circles + sum(
        1 for root in classes
        if not any(remaining[e] for e in parent if find(e) == root)
    )
    merged = [tuple(find(e) if e in parent else e for e in c) for c in rest]
    smoothed = _relabeled(merged, rest_in, free)
    return plus, minus, smoothed
