"""Intervals on the rational line with open/closed endpoint flags.

Used to evaluate interval modules at points ``u``, ``u^+`` (just right of
``u``) and ``u^-`` (just left of ``u``), and to take set differences that
describe kernels and cokernels of structure maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exponents import INF, fmt

AT, RIGHT_OF, LEFT_OF = 0, 1, -1


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    lo_closed: bool
    hi: object  # Fraction or INF
    hi_closed: bool

    def __post_init__(self):
        if self.hi == INF:
            object.__setattr__(self, "hi_closed", False)

    @property
    def empty(self) -> bool:
        if self.hi == INF:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def contains(self, v) -> bool:
        left = self.lo <= v if self.lo_closed else self.lo < v
        if self.hi == INF:
            return left
        right = v <= self.hi if self.hi_closed else v < self.hi
        return left and right

    def translate(self, c) -> "Interval":
        return Interval(self.lo + c, self.lo_closed, self.hi if self.hi == INF else self.hi + c, self.hi_closed)

    def probe(self, kind: int) -> "Interval":
        """The set of ``v`` at which the interval module is nonzero at ``v``/``v^+``/``v^-``."""
        if kind == AT:
            return self
        if kind == RIGHT_OF:
            return Interval(self.lo, True, self.hi, False)
        return Interval(self.lo, False, self.hi, self.hi != INF)

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo or (self.lo == other.lo and not self.lo_closed):
            lo, lc = self.lo, self.lo_closed
        else:
            lo, lc = other.lo, other.lo_closed
        if other.hi == INF or (self.hi != INF and (self.hi < other.hi or (self.hi == other.hi and not self.hi_closed))):
            hi, hc = self.hi, self.hi_closed
        else:
            hi, hc = other.hi, other.hi_closed
        return Interval(lo, lc, hi, hc)

    def minus(self, other: "Interval") -> list:
        """``self \\ other`` as a list of disjoint nonempty intervals."""
        if other.empty:
            return [] if self.empty else [self]
        pieces = [self.intersect(Interval(Fraction(-10**18), True, other.lo, not other.lo_closed))]
        if other.hi != INF:
            pieces.append(self.intersect(Interval(other.hi, not other.hi_closed, INF, False)))
        return [p for p in pieces if not p.empty]

    def __str__(self):
        return "%s%s, %s%s" % ("[" if self.lo_closed else "(", fmt(self.lo), fmt(self.hi),
                               "]" if self.hi_closed else ")")
