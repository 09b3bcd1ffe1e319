"""Barcodes as persistence modules, and the quiver-algebra action on them.

A persistence module ``M`` is a finite list of intervals ``[birth, death)``.
Vectors in ``M_c`` are written in the interval basis: a dict from interval
index to coefficient, supported on intervals that contain ``c``.

The product ``prod_c M_c`` is reindexed by ``N_c := M_{-c}``; an arrow of
length ``d`` from ``c`` to ``c + d`` then moves a vector from ``N_{c+d}``
down to ``N_c`` through the structure map ``M_{-c-d} -> M_{-c}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .bars import STRICT, Bar, BarModule
from .errors import PreconditionError
from .exponents import INF, ExponentGroup, exponent, fmt
from .novikov import QQ, Field
from .quiver import QuiverElement
from .tamarkin import TamGenerator, TamObject

TRIVIAL = ExponentGroup.trivial()


@dataclass(frozen=True)
class PersistenceModule:
    intervals: tuple = ()  # ((birth, death), ...), death may be INF
    field: Field = QQ

    @classmethod
    def of(cls, intervals: Iterable, field: Field = QQ) -> "PersistenceModule":
        out = []
        for b, d in intervals:
            b = exponent(b)
            d = INF if d == INF or d == "inf" else exponent(d)
            if d != INF and not b < d:
                raise PreconditionError("interval needs birth < death")
            out.append((b, d))
        return cls(tuple(sorted(out, key=lambda x: (x[0], Fraction(10**18) if x[1] == INF else x[1]))), field)

    def contains(self, k: int, c) -> bool:
        b, d = self.intervals[k]
        return b <= c and (d == INF or c < d)

    def fiber(self, c):
        """Indices of intervals alive at ``c``: a basis of ``M_c``."""
        return [k for k in range(len(self.intervals)) if self.contains(k, c)]

    def __str__(self):
        return "\n".join("[%s, %s)" % (fmt(b), fmt(d)) for b, d in self.intervals) if self.intervals else "0"


def _vector(v: Mapping | Iterable, field: Field) -> tuple:
    items = v.items() if isinstance(v, Mapping) else v
    acc: dict = {}
    for k, x in items:
        acc[k] = field.norm(acc.get(k, 0) + field.coerce(x))
    return tuple(sorted((k, x) for k, x in acc.items() if x != 0))


def structure_map(m: PersistenceModule, c, c2, v) -> tuple:
    """``t_{c,c2}: M_c -> M_{c2}`` for ``c <= c2`` on an interval-basis vector."""
    c, c2 = exponent(c), exponent(c2)
    if c > c2:
        raise PreconditionError("structure map needs c <= c'")
    v = _vector(v, m.field)
    for k, _ in v:
        if not m.contains(k, c):
            raise PreconditionError("vector not in the fiber at %s" % fmt(c))
    return tuple((k, x) for k, x in v if m.contains(k, c2))


@dataclass(frozen=True)
class ProductElement:
    """Finitely supported point of ``prod_c N_c``; entry ``c`` lies in ``M_{-c}``."""

    entries: tuple = ()  # ((c, vector), ...)

    @classmethod
    def of(cls, entries: Mapping | Iterable, m: PersistenceModule) -> "ProductElement":
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict = {}
        for c, v in items:
            c = exponent(c)
            merged = dict(acc.get(c, ()))
            for k, x in _vector(v, m.field):
                if not m.contains(k, -c):
                    raise PreconditionError("entry at %s has a coordinate outside M_%s" % (fmt(c), fmt(-c)))
                merged[k] = merged.get(k, 0) + x
            acc[c] = _vector(merged, m.field)
        return cls(tuple(sorted((c, v) for c, v in acc.items() if v)))

    def __getitem__(self, c):
        for k, v in self.entries:
            if k == c:
                return v
        return ()

    def __add__(self, other: "ProductElement") -> "ProductElement":
        merged: dict = {}
        for c, v in self.entries + other.entries:
            d = merged.setdefault(c, {})
            for k, x in v:
                d[k] = d.get(k, 0) + x
        return ProductElement(tuple(sorted((c, tuple(sorted((k, x) for k, x in d.items() if x != 0)))
                                           for c, d in merged.items()
                                           if any(x != 0 for x in d.values()))))

    def scale(self, a, m: PersistenceModule) -> "ProductElement":
        return ProductElement.of([(c, [(k, x * a) for k, x in v]) for c, v in self.entries], m)

    def __str__(self):
        if not self.entries:
            return "0"
        return "\n".join("%s: %s" % (fmt(c), " + ".join("%s*e%d" % (fmt(x) if isinstance(x, Fraction) else x, k)
                                                         for k, x in v)) for c, v in self.entries)


def l0_act(f: QuiverElement, n: ProductElement, m: PersistenceModule) -> ProductElement:
    """``n'_c = sum_{c'} a_{c,c'} t_{-c',-c}(n_{c'})`` with ``a_{c,c+d}`` read off ``f``.

    With this formula ``l0_act(f, l0_act(g, n)) == l0_act(qmul(g, f), n)``:
    the product is a right module over the path algebra.
    """
    if f.group != TRIVIAL:
        raise PreconditionError("the action needs the trivial group")
    if f.field != m.field:
        raise PreconditionError("incompatible scalars")
    out: dict = {}
    for c, x in f.entries:
        for d, alpha in x.terms:
            src = n[c + d]
            if not src:
                continue
            moved = structure_map(m, -(c + d), -c, src)
            acc = out.setdefault(c, {})
            for k, y in moved:
                acc[k] = m.field.norm(acc.get(k, 0) + alpha * y)
    return ProductElement.of([(c, list(v.items())) for c, v in out.items()], m)


def to_tam(m: PersistenceModule) -> TamObject:
    """Interval ``[p, q)`` becomes the generator ``[-q, -p)``; ``[p, inf)`` the ray at ``-p``."""
    gens = [TamGenerator(-b) if d == INF else TamGenerator(-d, -b) for b, d in m.intervals]
    return TamObject.of(gens, TRIVIAL, m.field)


def to_bars(m: PersistenceModule) -> BarModule:
    bars = [Bar.free(b) if d == INF else Bar(d - b, STRICT, b) for b, d in m.intervals]
    return BarModule.of(bars, TRIVIAL, m.field)
