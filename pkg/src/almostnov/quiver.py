"""The completed quiver algebra L0^G with finite coset support.

Vertices are cosets ``[c]`` in R/G; the arrow ``T^d_[c]`` (any rational
``d >= 0``) runs from ``[c]`` to ``[c+d]``.  An element stores, per source
coset, a Novikov element over the full exponent group whose term ``a T^d``
is the coefficient of ``T^d_[c]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import IncompatibleScalars
from .exponents import ExponentGroup, exponent, fmt, reduce_coset
from .novikov import EXACT, QQ, Field, NovikovElement, Precision, coarser

FULL = ExponentGroup.full()


@dataclass(frozen=True)
class QuiverElement:
    group: ExponentGroup
    entries: tuple = ()  # sorted ((coset, NovikovElement), ...)
    precision: Precision = EXACT
    field: Field = QQ

    @classmethod
    def build(cls, entries: Mapping | Iterable, group: ExponentGroup, precision: Precision = EXACT,
              field: Field = QQ) -> "QuiverElement":
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict = {}
        for c, x in items:
            c = reduce_coset(group, c)
            if not isinstance(x, NovikovElement):
                x = NovikovElement.build(x, FULL, precision, field)
            elif x.group != FULL or x.field != field:
                raise IncompatibleScalars()
            x = NovikovElement.build(x.terms, FULL, precision, field)
            acc[c] = acc[c] + x if c in acc else x
        return cls(group, tuple(sorted((c, x) for c, x in acc.items() if not x.is_zero())),
                   precision, field)

    @classmethod
    def arrow(cls, c, d, group, precision=EXACT, field=QQ, coeff=1) -> "QuiverElement":
        """The single arrow ``coeff * T^d_[c]``."""
        return cls.build({c: [(d, coeff)]}, group, precision, field)

    @classmethod
    def unit_on_support(cls, cosets: Iterable, group, precision=EXACT, field=QQ) -> "QuiverElement":
        return cls.build({c: [(0, 1)] for c in cosets}, group, precision, field)

    def __getitem__(self, c) -> NovikovElement:
        c = reduce_coset(self.group, c)
        for k, x in self.entries:
            if k == c:
                return x
        return NovikovElement.zero(FULL, self.precision, self.field)

    def is_zero(self) -> bool:
        return not self.entries

    def sources(self):
        return [c for c, _ in self.entries]

    def targets(self):
        return sorted({reduce_coset(self.group, c + d) for c, x in self.entries for d, _ in x.terms})

    def _check(self, other):
        if not isinstance(other, QuiverElement) or other.group != self.group or other.field != self.field:
            raise IncompatibleScalars()

    def __add__(self, other):
        self._check(other)
        prec = coarser(self.precision, other.precision)
        return QuiverElement.build(list(self.entries) + list(other.entries), self.group, prec, self.field)

    def scale(self, k) -> "QuiverElement":
        return QuiverElement.build([(c, x.scale(k)) for c, x in self.entries], self.group, self.precision,
                                   self.field)

    def __mul__(self, other):
        return qmul(self, other)

    # the K-module identification with a finitely supported point of prod_{R/G} Λ0
    def to_product(self) -> dict:
        return {c: tuple(x.terms) for c, x in self.entries}

    @classmethod
    def from_product(cls, prod: Mapping, group, precision=EXACT, field=QQ):
        return cls.build({c: list(t) for c, t in prod.items()}, group, precision, field)

    def __str__(self):
        if not self.entries:
            return "0"
        parts = []
        for c, x in self.entries:
            for d, a in x.terms:
                parts.append("%s*T^(%s)_[%s]" % (fmt(a) if isinstance(a, Fraction) else a, fmt(d), fmt(c)))
        return " + ".join(parts)


def active_cosets(*elements: QuiverElement):
    out = set()
    for e in elements:
        out.update(e.sources())
        out.update(e.targets())
    return sorted(out)


def qmul(b: QuiverElement, a: QuiverElement) -> QuiverElement:
    """Path-algebra product ``b . a``: follow an arrow of ``a``, then one of ``b``.

    Coefficient at ``([c], d'')`` is ``sum_{d+d'=d''} b_{[c+d],d'} a_{[c],d}``.
    """
    b._check(a)
    prec = coarser(a.precision, b.precision)
    out: dict = {}
    for c, x in a.entries:
        for d, alpha in x.terms:
            tgt = b[c + d]
            if tgt.is_zero():
                continue
            shifted = [(d + d2, alpha * beta) for d2, beta in tgt.terms]
            out.setdefault(c, []).extend(shifted)
    return QuiverElement.build(
        {c: NovikovElement.build(t, FULL, prec, a.field) for c, t in out.items()}, a.group, prec, a.field)


def qtruncate(a: QuiverElement, ell) -> QuiverElement:
    """Reduce modulo the ideal m(ell) spanned by arrows longer than ``ell``."""
    ell = exponent(ell)
    p = coarser(a.precision, Precision.weak(ell))
    return QuiverElement.build([(c, NovikovElement.build(x.terms, FULL, p, a.field)) for c, x in a.entries],
                               a.group, p, a.field)


def lambda_act(s: NovikovElement, a: QuiverElement) -> QuiverElement:
    """Action of Λ0 on L0^G: ``T^e`` sends ``T^d_[c]`` to ``T^{d+e}_[c]``.

    This is left multiplication by the image ``sum_c s_[c]`` of ``s``.
    """
    if s.group != FULL or s.field != a.field:
        raise IncompatibleScalars()
    prec = coarser(s.precision, a.precision)
    return QuiverElement.build([(c, NovikovElement.build((s * x).terms, FULL, prec, a.field))
                                for c, x in a.entries], a.group, prec, a.field)
