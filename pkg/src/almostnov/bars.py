"""Finitely presented graded modules over the Novikov ring as barcodes.

A bar at shift ``x`` of length ``l`` is the cyclic module generated in
coset ``[x]``:

* ``strict``: ``Λ0 / T^l Λ0``, the interval ``[x, x+l)``;
* ``weak``: ``Λ0 / m(l)``, the interval ``[x, x+l]`` (``l = 0`` gives the
  residue field, an ephemeral bar);
* ``l = inf``: a free summand ``[x, inf)``.

Hom and tensor outputs may be left-open intervals such as ``m(a)/m(b)``;
``closed_left=False`` records that.  All positions are taken modulo G only at
the end, so intermediate arithmetic uses coset representatives.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IncompatibleScalars, PrecisionError, PreconditionError
from .exponents import INF, ExponentGroup, exponent, fmt, reduce_coset
from .intervals import AT, LEFT_OF, RIGHT_OF, Interval
from .novikov import EXACT, QQ, Field, NovikovElement, Precision, divide, valuation

STRICT, WEAK = "strict", "weak"
FULL = ExponentGroup.full()


@dataclass(frozen=True, order=False)
class Bar:
    length: object  # Fraction or INF
    boundary: str = STRICT
    shift: Fraction = Fraction(0)
    degree: int = 0
    closed_left: bool = True

    def __post_init__(self):
        if self.length != INF:
            object.__setattr__(self, "length", exponent(self.length))
            if self.length < 0:
                raise PreconditionError("negative bar length")
        else:
            object.__setattr__(self, "boundary", STRICT)
        if self.boundary not in (STRICT, WEAK):
            raise PreconditionError("unknown boundary %r" % (self.boundary,))
        if self.length == 0 and (self.boundary != WEAK or not self.closed_left):
            raise PreconditionError("a length-0 bar must be the closed weak bar")
        object.__setattr__(self, "shift", exponent(self.shift))

    @classmethod
    def free(cls, shift=0, degree=0) -> "Bar":
        return cls(INF, STRICT, shift, degree)

    @property
    def is_free(self) -> bool:
        return self.length == INF

    @property
    def is_ephemeral(self) -> bool:
        return self.length == 0

    def interval(self) -> Interval:
        hi = INF if self.is_free else self.shift + self.length
        return Interval(self.shift, self.closed_left, hi, self.boundary == WEAK)

    def key(self):
        return (self.degree, self.shift, self.length if self.length != INF else Fraction(10**18) + 1,
                self.boundary, not self.closed_left)

    def with_shift(self, shift) -> "Bar":
        return Bar(self.length, self.boundary, shift, self.degree, self.closed_left)

    def __str__(self):
        s = "(%s, %s)" % (fmt(self.length), "free" if self.is_free else self.boundary)
        if not self.closed_left:
            s += " open-left"
        return "%s shift %s degree %d" % (s, fmt(self.shift), self.degree)


def bar_from_interval(iv: Interval, degree: int, group: ExponentGroup) -> Bar | None:
    if iv.empty:
        return None
    if iv.hi == INF:
        return Bar(INF, STRICT, reduce_coset(group, iv.lo), degree, iv.lo_closed)
    return Bar(iv.hi - iv.lo, WEAK if iv.hi_closed else STRICT, reduce_coset(group, iv.lo), degree,
               iv.lo_closed)


@dataclass(frozen=True)
class BarModule:
    bars: tuple = ()
    group: ExponentGroup = FULL
    field: Field = QQ
    precision: Precision = EXACT

    @classmethod
    def of(cls, bars: Iterable[Bar], group: ExponentGroup = FULL, field: Field = QQ,
           precision: Precision = EXACT) -> "BarModule":
        canon = [b.with_shift(reduce_coset(group, b.shift)) for b in bars]
        return cls(tuple(sorted(canon, key=Bar.key)), group, field, precision)

    def __add__(self, other: "BarModule") -> "BarModule":
        _check(self, other)
        return BarModule.of(self.bars + other.bars, self.group, self.field,
                            min(self.precision, other.precision))

    def __len__(self):
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def __str__(self):
        return "\n".join(str(b) for b in self.bars) if self.bars else "0"


def _check(m: BarModule, n: BarModule):
    if m.group != n.group or m.field != n.field:
        raise IncompatibleScalars()


# ---------------------------------------------------------------------------
# presentations and normal form


@dataclass(frozen=True)
class Presentation:
    """Cokernel of ``entries``: a ``rows x cols`` matrix whose columns are relations.

    Generator ``i`` sits in coset ``row_shifts[i]``; relation ``j`` in coset
    ``col_shifts[j]``.  A term ``T^e`` in entry ``(i, j)`` has degree
    ``row_shifts[i] + e``, which must agree with ``col_shifts[j]`` mod G.
    """

    rows: int
    cols: int
    entries: tuple  # tuple of tuples of NovikovElement over the full group
    row_shifts: tuple = ()
    col_shifts: tuple = ()
    group: ExponentGroup = FULL
    precision: Precision = dc_field(default_factory=lambda: Precision.weak(16))
    field: Field = QQ

    @classmethod
    def build(cls, entries: Sequence[Sequence], group: ExponentGroup = FULL,
              precision: Precision | None = None, field: Field = QQ, row_shifts=None, col_shifts=None,
              rows: int | None = None) -> "Presentation":
        precision = precision or Precision.weak(16)
        rows = len(entries) if rows is None else rows
        cols = len(entries[0]) if entries else 0
        mat = []
        for r in entries:
            if len(r) != cols:
                raise PreconditionError("ragged matrix")
            row = []
            for x in r:
                if not isinstance(x, NovikovElement):
                    x = NovikovElement.build(x, FULL, precision, field)
                elif x.precision != precision or x.field != field:
                    raise PreconditionError("all entries must share one precision and field")
                row.append(NovikovElement.build(x.terms, FULL, precision, field))
            mat.append(tuple(row))
        if len(mat) != rows:
            raise PreconditionError("row count mismatch")
        rs = tuple(reduce_coset(group, s) for s in (row_shifts or [0] * rows))
        cs = tuple(reduce_coset(group, s) for s in (col_shifts or [0] * cols))
        if len(rs) != rows or len(cs) != cols:
            raise PreconditionError("shift list length mismatch")
        p = cls(rows, cols, tuple(mat), rs, cs, group, precision, field)
        p.check_grading()
        return p

    def check_grading(self):
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                for e, _ in x.terms:
                    if reduce_coset(self.group, self.row_shifts[i] + e) != self.col_shifts[j]:
                        raise PreconditionError("entry (%d, %d) breaks the coset grading" % (i, j))


def normal_form(p: Presentation) -> BarModule:
    """Diagonalise by minimal-valuation pivoting and read off the cokernel."""
    if not p.precision.finite:
        raise PreconditionError("normal form needs a finite precision")
    M = [list(r) for r in p.entries]
    rows = list(range(p.rows))
    cols = list(range(p.cols))
    bars = []
    while rows and cols:
        best = None
        for i in rows:
            for j in cols:
                v = valuation(M[i][j])
                if v != INF and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise PrecisionError("insufficient precision, increase r")
        v, i, j = best
        piv = M[i][j]
        for k in rows:
            if k == i or M[k][j].is_zero():
                continue
            q = divide(M[k][j], piv)
            M[k] = [M[k][c] - q * M[i][c] if c in cols else M[k][c] for c in range(p.cols)]
        if v > 0:
            bars.append(Bar(v, STRICT, p.row_shifts[i]))
        rows.remove(i)
        cols.remove(j)
    bars.extend(Bar.free(p.row_shifts[i]) for i in rows)
    return BarModule.of(bars, p.group, p.field, p.precision)


# ---------------------------------------------------------------------------
# hom and tensor on bars, via two-term resolutions
#
# A bar with interval I has generator point x (probe AT, or RIGHT_OF when the
# bar is open on the left) and relation point x + l (probe AT for strict,
# RIGHT_OF for weak, none when free).  Hom(P_u, N) = N(u) and
# Hom(P_{u^+}, N) = N(u^+); P_u ⊗ N = N(. - u) and P_{u^+} ⊗ N = N((. - u)^-).


def _resolution(b: Bar):
    gen = (b.shift, AT if b.closed_left else RIGHT_OF)
    if b.is_free:
        return gen, None
    return gen, (b.shift + b.length, AT if b.boundary == STRICT else RIGHT_OF)


def _hom_set(n: Bar, point) -> Interval:
    u, kind = point
    return n.interval().probe(kind).translate(-u)


def _tensor_set(n: Bar, point) -> Interval:
    u, kind = point
    return n.interval().probe(LEFT_OF if kind == RIGHT_OF else AT).translate(u)


def bar_hom(m: Bar, n: Bar, group: ExponentGroup = FULL) -> list:
    """``RHom(m, n)`` as bars; Ext^k lands in degree ``k + deg n - deg m``."""
    gen, rel = _resolution(m)
    A = _hom_set(n, gen)
    out = []
    if rel is None:
        pieces0, pieces1 = ([A] if not A.empty else []), []
    else:
        B = _hom_set(n, rel)
        pieces0, pieces1 = A.minus(B), B.minus(A)
    base = n.degree - m.degree
    for k, pieces in ((0, pieces0), (1, pieces1)):
        for iv in pieces:
            b = bar_from_interval(iv, base + k, group)
            if b is not None:
                out.append(b)
    return out


def bar_tensor(m: Bar, n: Bar, group: ExponentGroup = FULL, derived: bool = False) -> list:
    gen, rel = _resolution(m)
    A = _tensor_set(n, gen)
    if rel is None:
        pieces0, pieces1 = ([A] if not A.empty else []), []
    else:
        B = _tensor_set(n, rel)
        pieces0, pieces1 = A.minus(B), B.minus(A)
    base = m.degree + n.degree
    out = []
    for k, pieces in ((0, pieces0), (1, pieces1 if derived else [])):
        for iv in pieces:
            b = bar_from_interval(iv, base - k, group)
            if b is not None:
                out.append(b)
    return out


def _combine(m: BarModule, n: BarModule, fn) -> BarModule:
    _check(m, n)
    out = []
    for a in m.bars:
        for b in n.bars:
            out.extend(fn(a, b))
    return BarModule.of(out, m.group, m.field, min(m.precision, n.precision))


def derived_hom(m: BarModule, n: BarModule) -> BarModule:
    return _combine(m, n, lambda a, b: bar_hom(a, b, m.group))


def hom(m: BarModule, n: BarModule) -> BarModule:
    """Degree-zero Hom: the Ext^0 part of :func:`derived_hom`."""
    return _combine(m, n, lambda a, b: [x for x in bar_hom(a, b, m.group) if x.degree == b.degree - a.degree])


def ext1(m: BarModule, n: BarModule) -> BarModule:
    return _combine(m, n, lambda a, b: [x for x in bar_hom(a, b, m.group)
                                        if x.degree == b.degree - a.degree + 1])


def tensor(m: BarModule, n: BarModule, derived: bool = False) -> BarModule:
    return _combine(m, n, lambda a, b: bar_tensor(a, b, m.group, derived))


# ---------------------------------------------------------------------------
# almost mathematics


def is_almost_zero(m: BarModule) -> bool:
    return all(b.is_ephemeral for b in m.bars)


def almost_signature(m: BarModule) -> Counter:
    return Counter((b.length, b.shift, b.degree) for b in m.bars if not b.is_ephemeral)


def is_almost_isomorphic(m: BarModule, n: BarModule) -> bool:
    _check(m, n)
    return almost_signature(m) == almost_signature(n)


def annihilates(m: BarModule, eps) -> bool:
    """True iff ``T^eps`` acts as zero on every bar of ``m``."""
    eps = exponent(eps)
    for b in m.bars:
        if b.is_free:
            return False
        if b.boundary == STRICT and eps < b.length:
            return False
        if b.boundary == WEAK and eps <= b.length:
            return False
    return True


# ---------------------------------------------------------------------------
# derived completeness and completion


@dataclass(frozen=True)
class TelescopeCertificate:
    """``lim(... -T-> B -T-> B)`` vanishes for the bar ``B``."""

    bar: Bar
    reason: str
    steps: int | None  # T^steps acts as zero on a torsion bar

    def __str__(self):
        return "%s: %s" % (self.bar, self.reason)


def derived_completeness_certificate(m: BarModule) -> list:
    certs = []
    for b in m.bars:
        if b.is_free:
            certs.append(TelescopeCertificate(b, "free summand: separated and complete", None))
            continue
        n = math.floor(b.length) + 1
        if not annihilates(BarModule.of([b], m.group, m.field), n):
            raise AssertionError("torsion bar not killed by T^%d" % n)
        certs.append(TelescopeCertificate(b, "T^%d acts as zero, transition maps eventually vanish" % n, n))
    return certs


def is_derived_complete(m: BarModule) -> bool:
    return len(derived_completeness_certificate(m)) == len(m.bars)


def complete(shape):
    """Completion of a finite BarModule (itself) or of a lazy countable shape."""
    if isinstance(shape, BarModule):
        derived_completeness_certificate(shape)
        return shape
    from . import zoo

    return zoo.completion_of(shape)
