"""Laurent polynomials in one variable ``q`` with integer coefficients."""

from __future__ import annotations

import json
import re
from typing import Iterable, Iterator, Mapping

__all__ = ["LaurentPoly", "Q", "QINV", "add", "mul", "scale", "parse_laurent"]


class LaurentPoly:
    """An element of Z[q, q^-1], stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal iff
    their term dictionaries are equal. Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError(f"exponent and coefficient must be int, got {e!r}, {c!r}")
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def _coerce(cls, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return cls.constant(other)
        return NotImplemented

    # -- queries ---------------------------------------------------------

    def terms(self) -> list[tuple[int, int]]:
        """Terms as ``(exponent, coefficient)`` pairs, descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    @property
    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            # only monomials are units
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("negative power of a non-unit Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly({e * n: 1 if n % 2 == 0 else c})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> LaurentPoly:
        return LaurentPoly({e: c * v for e, v in self._terms.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> LaurentPoly:
        """Substitute ``q -> q^-1``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def __call__(self, value):
        """Evaluate at a number (exact if ``value`` is a Fraction or int != 0)."""
        return sum(c * value ** e for e, c in self._terms.items())

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- formatting ------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            body = _format_term(abs(c), e)
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> list[list]:
        """``[[exponent, "coefficient"], ...]`` in descending exponent order."""
        return [[e, str(c)] for e, c in self.terms()]

    @classmethod
    def from_json(cls, data) -> LaurentPoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls((int(e), int(c)) for e, c in data)


def _format_term(c: int, e: int) -> str:
    if e == 0:
        return str(c)
    power = "q" if e == 1 else f"q^{e}"
    return power if c == 1 else f"{c}*{power}"


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
            (?P<coef>\d+)\s*(?:\*\s*(?P<q1>q)(?:\^(?P<e1>-?\d+))?)?
          | (?P<q2>q)(?:\^(?P<e2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the text form produced by ``str(LaurentPoly)``.

    >>> str(parse_laurent("q^2 + 2 + q^-2"))
    'q^2 + 2 + q^-2'
    """
    text = text.strip()
    if text == "0":
        return LaurentPoly()
    pos = 0
    terms: dict[int, int] = {}
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse Laurent polynomial at column {pos}: {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = int(m.group("coef"))
            if m.group("q1"):
                e = int(m.group("e1")) if m.group("e1") is not None else 1
            else:
                e = 0
        else:
            c = 1
            e = int(m.group("e2")) if m.group("e2") is not None else 1
        terms[e] = terms.get(e, 0) + sign * c
        pos = m.end()
        first = False
    return LaurentPoly(terms)


Q = LaurentPoly.monomial(1)
QINV = LaurentPoly.monomial(-1)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def scale(a: LaurentPoly, c: int) -> LaurentPoly:
    return a.scale(c)
