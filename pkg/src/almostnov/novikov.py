"""Exact arithmetic in truncated Novikov rings.

An element is a finite sum ``sum a_i T^{c_i}`` with exponents in ``G ∩ [0, ∞)``
known modulo one of two ideals:

* weak boundary at ``r``: modulo ``m(r)``, the ideal of exponents ``> r``;
* strict boundary at ``r``: modulo ``T^r Λ0``, exponents ``>= r``.

``Precision(None)`` means exact polynomial arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable

from .errors import IncompatibleScalars, ParseError, PrecisionError, PreconditionError
from .exponents import INF, ExponentGroup, exponent, fmt, member


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or (self.p and any(self.p % k == 0 for k in range(2, math.isqrt(self.p) + 1))) or self.p == 1:
            raise ValueError("field characteristic must be 0 or a prime, got %d" % self.p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t == "q":
            return cls(0)
        m = re.fullmatch(r"f(\d+)", t)
        if m:
            return cls(int(m.group(1)))
        raise ValueError("cannot parse field %r" % (text,))

    def __str__(self):
        return "q" if self.p == 0 else "f%d" % self.p

    def coerce(self, x):
        if self.p == 0:
            if isinstance(x, float):
                raise TypeError("coefficients must be exact")
            return Fraction(x)
        x = Fraction(x)
        return (x.numerator * pow(x.denominator, -1, self.p)) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero coefficient")
        return 1 / x if self.p == 0 else pow(int(x), -1, self.p)

    def norm(self, x):
        return x if self.p == 0 else x % self.p


QQ = Field(0)


@total_ordering
@dataclass(frozen=True)
class Precision:
    bound: Fraction | None = None
    strict: bool = False

    def __post_init__(self):
        if self.bound is not None:
            object.__setattr__(self, "bound", exponent(self.bound))
            if self.bound < 0:
                raise ValueError("precision bound must be >= 0")
        elif self.strict:
            object.__setattr__(self, "strict", False)

    @classmethod
    def weak(cls, r) -> "Precision":
        return cls(exponent(r), False)

    @classmethod
    def strict_at(cls, r) -> "Precision":
        return cls(exponent(r), True)

    @classmethod
    def exact(cls) -> "Precision":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Precision":
        t = text.strip().lower()
        if t in ("inf", "∞"):
            return cls.exact()
        bound, _, kind = t.partition(":")
        if kind not in ("", "weak", "strict"):
            raise ValueError("precision boundary must be weak or strict")
        return cls(exponent(bound), kind == "strict")

    @property
    def finite(self) -> bool:
        return self.bound is not None

    def keeps(self, x) -> bool:
        """True iff the monomial T^x survives in the quotient."""
        if self.bound is None:
            return True
        return x < self.bound if self.strict else x <= self.bound

    def _key(self):
        if self.bound is None:
            return (INF, 0)
        return (self.bound, 0 if self.strict else 1)

    def __lt__(self, other):
        return self._key() < other._key()

    def __str__(self):
        if self.bound is None:
            return "inf"
        return "%s:%s" % (fmt(self.bound), "strict" if self.strict else "weak")


EXACT = Precision.exact()


def coarser(p: Precision, q: Precision) -> Precision:
    return min(p, q)


@dataclass(frozen=True)
class NovikovElement:
    group: ExponentGroup
    terms: tuple = ()
    precision: Precision = EXACT
    field: Field = QQ

    @classmethod
    def build(cls, terms: Iterable, group: ExponentGroup, precision: Precision = EXACT,
              field: Field = QQ) -> "NovikovElement":
        acc: dict = {}
        for e, c in terms:
            e = exponent(e)
            if e < 0:
                raise PreconditionError("negative exponent %s" % fmt(e))
            if not member(group, e):
                raise PreconditionError("exponent %s not in group %s" % (fmt(e), group))
            if not precision.keeps(e):
                continue
            acc[e] = acc.get(e, 0) + field.coerce(c)
        terms = tuple((e, field.norm(c)) for e, c in sorted(acc.items()) if field.norm(c) != 0)
        return cls(group, terms, precision, field)

    # convenience constructors
    @classmethod
    def zero(cls, group, precision=EXACT, field=QQ):
        return cls(group, (), precision, field)

    @classmethod
    def one(cls, group, precision=EXACT, field=QQ):
        return cls.build([(0, 1)], group, precision, field)

    @classmethod
    def monomial(cls, e, group, precision=EXACT, field=QQ, coeff=1):
        return cls.build([(e, coeff)], group, precision, field)

    def is_zero(self) -> bool:
        """Zero at the working precision (exactly zero only when precision is exact)."""
        return not self.terms

    def _like(self, terms, precision=None):
        return NovikovElement.build(terms, self.group, precision or self.precision, self.field)

    def _check(self, other: "NovikovElement"):
        if not isinstance(other, NovikovElement):
            raise IncompatibleScalars()
        if other.group != self.group or other.field != self.field:
            raise IncompatibleScalars()

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -other)

    def __neg__(self):
        return NovikovElement(self.group, tuple((e, self.field.norm(-c)) for e, c in self.terms),
                              self.precision, self.field)

    def __mul__(self, other):
        return mul(self, other)

    def scale(self, c) -> "NovikovElement":
        c = self.field.coerce(c)
        return self._like([(e, a * c) for e, a in self.terms])

    def coefficient(self, e):
        for x, c in self.terms:
            if x == e:
                return c
        return 0

    def __str__(self):
        return format_element(self)


def add(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    a._check(b)
    prec = coarser(a.precision, b.precision)
    return NovikovElement.build(a.terms + b.terms, a.group, prec, a.field)


def mul(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    a._check(b)
    prec = coarser(a.precision, b.precision)
    out = []
    for e1, c1 in a.terms:
        if not prec.keeps(e1):
            break
        for e2, c2 in b.terms:
            if not prec.keeps(e1 + e2):
                break
            out.append((e1 + e2, c1 * c2))
    return NovikovElement.build(out, a.group, prec, a.field)


def valuation(a: NovikovElement):
    """Minimal stored exponent, ``math.inf`` for zero."""
    return a.terms[0][0] if a.terms else INF


def truncate(a: NovikovElement, p: Precision) -> NovikovElement:
    if a.precision < p:
        raise PrecisionError("cannot refine precision from %s to %s" % (a.precision, p))
    return NovikovElement.build(a.terms, a.group, p, a.field)


def invert_unit(a: NovikovElement) -> NovikovElement:
    if a.is_zero() or valuation(a) > 0:
        raise PreconditionError("non-unit")
    c0 = a.terms[0][1]
    rest = a._like(a.terms[1:])
    if rest.is_zero():
        return a._like([(0, a.field.inv(c0))])
    if not a.precision.finite:
        raise PreconditionError("inverse not polynomial")
    # b_e = -(1/c0) * sum_{f > 0} a_f b_{e-f}, over the exponents reachable
    # as sums of those of ``a`` (the only ones where b can be nonzero)
    keep = a.precision.keeps
    steps = [e for e, _ in rest.terms]
    reach, frontier = {Fraction(0)}, [Fraction(0)]
    while frontier:
        nxt = []
        for x in frontier:
            for s in steps:
                y = x + s
                if keep(y) and y not in reach:
                    reach.add(y)
                    nxt.append(y)
        frontier = nxt
    field = a.field
    inv0 = field.inv(c0)
    coeffs = dict(rest.terms)
    b = {Fraction(0): inv0}
    for e in sorted(reach)[1:]:
        acc = 0
        for f, af in coeffs.items():
            if f <= e and (e - f) in b:
                acc += af * b[e - f]
        acc = field.norm(-acc * inv0)
        if acc != 0:
            b[e] = acc
    return a._like(sorted(b.items()))


def shift_down(a: NovikovElement, c) -> NovikovElement:
    """Divide by the monomial T^c; every exponent of ``a`` must be >= c."""
    return NovikovElement.build([(e - c, x) for e, x in a.terms], a.group, a.precision, a.field)


def divide(a: NovikovElement, b: NovikovElement) -> NovikovElement:
    """Return q with ``b*q == a`` at the working precision."""
    a._check(b)
    if b.is_zero():
        raise PrecisionError("division by an element that is zero at this precision")
    vb = valuation(b)
    if valuation(a) < vb:
        raise PreconditionError("not divisible at this precision")
    prec = coarser(a.precision, b.precision)
    a = NovikovElement.build(a.terms, a.group, prec, a.field)
    unit = NovikovElement.build([(e - vb, c) for e, c in b.terms], b.group, prec, b.field)
    return shift_down(a, vb) * invert_unit(unit)


# ---------------------------------------------------------------------------
# text format:  coeff*T^(num/den) + ... @ precision

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?=T))?)?"
    r"(?P<T>T(?:\s*\^\s*(?:\((?P<pexp>-?\d+(?:/\d+)?)\)|(?P<bexp>\d+(?:/\d+)?)))?)?\s*"
)


def format_coeff(c) -> str:
    return fmt(c) if isinstance(c, Fraction) else str(c)


def format_element(a: NovikovElement, with_precision=True) -> str:
    parts = []
    for e, c in a.terms:
        cs = format_coeff(c)
        parts.append(cs if e == 0 else "%s*T^(%s)" % (cs, fmt(e)))
    body = " + ".join(parts) if parts else "0"
    return body + (" @" + str(a.precision) if with_precision else "")


def parse_element(text: str, group: ExponentGroup, precision: Precision | None = None,
                  field: Field = QQ) -> NovikovElement:
    """Parse ``coeff*T^(p/q) + ...`` with an optional ``@precision`` suffix."""
    text = text.replace("−", "-")
    body, at, ptext = text.partition("@")
    if at:
        try:
            precision = Precision.parse(ptext)
        except ValueError as exc:
            raise ParseError(str(exc), 1, len(body) + 2) from None
    if precision is None:
        precision = EXACT
    if body.strip() == "":
        raise ParseError("empty element", 1, 1)
    pos, terms = 0, []
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("T") is None):
            raise ParseError("unexpected %r" % body[pos:pos + 8], 1, pos + 1)
        if terms and m.group("sign") is None:
            raise ParseError("expected '+' or '-'", 1, pos + 1)
        coef = Fraction(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("T"):
            ex = m.group("pexp") or m.group("bexp") or "1"
        else:
            ex = "0"
        terms.append((Fraction(ex), coef))
        pos = m.end()
    return NovikovElement.build(terms, group, precision, field)
