"""Exponent groups G in R and coset arithmetic on R/G.

Exponents are exact :class:`fractions.Fraction` values.  Only three kinds of
subgroup are representable: the trivial group, a cyclic group ``d*Z`` with a
positive rational generator, and ``full`` (all rationals, standing in for R).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Exponent = Fraction
INF = math.inf

RationalLike = Union[int, str, Fraction]


def exponent(x: RationalLike) -> Fraction:
    """Coerce ``x`` to an exact exponent; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("exponents must be exact; got float %r" % (x,))
    if isinstance(x, str):
        x = x.strip().replace("−", "-")
    return Fraction(x)


def fmt(x) -> str:
    """Canonical text form of an exponent (``inf`` for infinity)."""
    if x == INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


@dataclass(frozen=True)
class ExponentGroup:
    kind: str
    d: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("trivial", "cyclic", "full"):
            raise ValueError("unknown group kind %r" % (self.kind,))
        if self.kind == "cyclic":
            if self.d is None or Fraction(self.d) <= 0:
                raise ValueError("cyclic group needs a positive generator")
            object.__setattr__(self, "d", Fraction(self.d))
        elif self.d is not None:
            raise ValueError("only cyclic groups carry a generator")

    @classmethod
    def trivial(cls) -> "ExponentGroup":
        return cls("trivial")

    @classmethod
    def cyclic(cls, d: RationalLike) -> "ExponentGroup":
        return cls("cyclic", exponent(d))

    @classmethod
    def full(cls) -> "ExponentGroup":
        return cls("full")

    @classmethod
    def parse(cls, text: str) -> "ExponentGroup":
        """Parse ``trivial``, ``z``, ``cyclic:p/q`` or ``full``."""
        t = text.strip().lower()
        if t == "trivial":
            return cls.trivial()
        if t == "z":
            return cls.cyclic(1)
        if t == "full":
            return cls.full()
        m = re.fullmatch(r"cyclic:(.+)", t)
        if m:
            return cls.cyclic(m.group(1))
        raise ValueError("cannot parse group %r" % (text,))

    def __str__(self):
        if self.kind == "cyclic":
            return "z" if self.d == 1 else "cyclic:" + fmt(self.d)
        return self.kind

    @property
    def is_dense(self) -> bool:
        return self.kind == "full"


def member(g: ExponentGroup, x: RationalLike) -> bool:
    x = exponent(x)
    if g.kind == "trivial":
        return x == 0
    if g.kind == "full":
        return True
    return (x / g.d).denominator == 1


def reduce_coset(g: ExponentGroup, x: RationalLike) -> Fraction:
    """Canonical representative of the class of ``x`` in R/G."""
    x = exponent(x)
    if g.kind == "trivial":
        return x
    if g.kind == "full":
        return Fraction(0)
    return x - g.d * math.floor(x / g.d)
