"""Equivariant interval objects on the t-line and their Hom modules.

A generator ``(a, inf, k)`` is the ray sheaf ``K_{t >= a}`` in degree ``k``;
a bounded generator ``(a, b, k)`` is the cone of the restriction
``K_{t >= a} -> K_{t >= b}``, i.e. the two-term complex with the ray at ``a``
in degree ``k - 1`` and the ray at ``b`` in degree ``k``.  An object over a
group ``G`` stands for the sum of all G-translates of its generators.

Every Hom is assembled from the single fact ``RHom(K_{t>=a}, K_{t>=c}) = K``
when ``c >= a`` and ``0`` otherwise.  Translating the target by ``s`` turns
Hom into a persistence module over ``s``; its barcode, read modulo G, is the
Hom module over the Novikov ring.  With this orientation the ray at ``a``
corresponds to a free bar at ``-a`` and the generator ``[a, b)`` to a bar of
length ``b - a`` starting at ``-b``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .bars import STRICT, Bar, BarModule, derived_hom, is_almost_isomorphic
from .errors import PreconditionError
from .exponents import INF, ExponentGroup, exponent, fmt, reduce_coset
from .linalg import nullspace, rank
from .novikov import QQ, Field, NovikovElement, Precision


@dataclass(frozen=True)
class TamGenerator:
    left: Fraction
    right: object = INF
    degree: int = 0

    def __post_init__(self):
        object.__setattr__(self, "left", exponent(self.left))
        if self.right != INF:
            object.__setattr__(self, "right", exponent(self.right))
            if self.right <= self.left:
                raise PreconditionError("generator needs right > left")

    @property
    def is_ray(self) -> bool:
        return self.right == INF

    def translate(self, c) -> "TamGenerator":
        return TamGenerator(self.left + c, INF if self.is_ray else self.right + c, self.degree)

    def rays(self):
        """Terms ``(position, degree)`` of the ray complex, with the differential
        running from the first to the second term."""
        if self.is_ray:
            return [(self.left, self.degree)]
        return [(self.left, self.degree - 1), (self.right, self.degree)]

    def key(self):
        return (self.degree, self.left, Fraction(10**18) if self.is_ray else self.right)

    def __str__(self):
        return "[%s, %s) degree %d" % (fmt(self.left), fmt(self.right), self.degree)


def _canonical(g: TamGenerator, group: ExponentGroup) -> TamGenerator:
    return g.translate(reduce_coset(group, g.left) - g.left)


@dataclass(frozen=True)
class TamObject:
    generators: tuple = ()
    group: ExponentGroup = ExponentGroup.cyclic(1)
    field: Field = QQ

    @classmethod
    def of(cls, gens: Iterable, group: ExponentGroup = ExponentGroup.cyclic(1), field: Field = QQ):
        out = []
        for g in gens:
            if not isinstance(g, TamGenerator):
                g = TamGenerator(*g)
            out.append(_canonical(g, group))
        return cls(tuple(sorted(out, key=TamGenerator.key)), group, field)

    @classmethod
    def unit(cls, group: ExponentGroup = ExponentGroup.cyclic(1), field: Field = QQ) -> "TamObject":
        return cls.of([TamGenerator(0)], group, field)

    def translate(self, c) -> "TamObject":
        return TamObject.of([g.translate(c) for g in self.generators], self.group, self.field)

    def __add__(self, other: "TamObject") -> "TamObject":
        if other.group != self.group or other.field != self.field:
            raise PreconditionError("incompatible scalars")
        return TamObject.of(self.generators + other.generators, self.group, self.field)

    def __str__(self):
        return "\n".join(str(g) for g in self.generators) if self.generators else "0"


def ray_rhom(a, c) -> dict:
    """Graded dimension of ``RHom(K_{t>=a}, K_{t>=c})``."""
    return {0: 1} if exponent(c) >= exponent(a) else {}


# ---------------------------------------------------------------------------
# the total Hom complex between two generators


@dataclass
class _Complex:
    basis: list  # [(p, q, degree)] indices into source/target ray terms


def _hom_complex(src: TamGenerator, tgt: TamGenerator, s, field: Field):
    X = src.rays()
    Y = [(y + s, d) for y, d in tgt.rays()]
    basis = [(p, q, Y[q][1] - X[p][1]) for p in range(len(X)) for q in range(len(Y))
             if ray_rhom(X[p][0], Y[q][0])]
    return _Complex(basis), X, Y


def _differential(cx, X, Y, field: Field):
    """Matrix of ``d(phi) = d_Y phi - (-1)^n phi d_X`` in the basis of ``cx``."""
    idx = {(p, q): k for k, (p, q, _) in enumerate(cx.basis)}
    one, zero = field.coerce(1), field.coerce(0)
    D = [[zero] * len(cx.basis) for _ in cx.basis]
    for k, (p, q, n) in enumerate(cx.basis):
        if q + 1 < len(Y) and (p, q + 1) in idx:
            D[idx[(p, q + 1)]][k] += one
        if p >= 1 and (p - 1, q) in idx:
            D[idx[(p - 1, q)]][k] -= one if n % 2 == 0 else -one
    return D


def _cocycles_and_boundaries(basis, D, field: Field, n: int):
    cols = [k for k, b in enumerate(basis) if b[2] == n]
    prev = [k for k, b in enumerate(basis) if b[2] == n - 1]
    nb = len(basis)
    Z = []
    if cols:
        sub = [[D[r][c] for c in cols] for r in range(nb)]
        for sol in nullspace(sub, len(cols), field):
            v = [field.coerce(0)] * nb
            for c, k in enumerate(cols):
                v[k] = sol[c]
            Z.append(v)
    B = [[D[r][c] for r in range(nb)] for c in prev]
    return Z, B


def _embed(vecs, old_basis, new_basis, field):
    pos = {(p, q): k for k, (p, q, _) in enumerate(new_basis)}
    out = []
    for v in vecs:
        w = [field.coerce(0)] * len(new_basis)
        for k, x in enumerate(v):
            if x != 0:
                p, q, _ = old_basis[k]
                w[pos[(p, q)]] = x
        out.append(w)
    return out


def rhom(e, f, field: Field = QQ) -> dict:
    """Cohomology of ``RHom(e, f)`` for the non-equivariant slices.

    Returns ``{degree: [labels]}`` where each label lists the (source ray,
    target ray) positions in the support of a representative cocycle.
    """
    out: dict = {}
    for g in _gens(e):
        for h in _gens(f):
            cx, X, Y = _hom_complex(g, h, 0, field)
            D = _differential(cx, X, Y, field)
            for n in sorted({b[2] for b in cx.basis}):
                Z, B = _cocycles_and_boundaries(cx.basis, D, field, n)
                dim = rank(Z + B, field) - rank(B, field)
                reps = _complement(Z, B, field)[:dim]
                for v in reps:
                    label = tuple((X[p][0], Y[q][0]) for k, (p, q, _) in enumerate(cx.basis) if v[k] != 0)
                    out.setdefault(n, []).append(label)
    return {n: v for n, v in sorted(out.items()) if v}


def _gens(x):
    if isinstance(x, TamObject):
        return x.generators
    if isinstance(x, TamGenerator):
        return (x,)
    return tuple(x)


def _complement(Z, B, field):
    """Vectors of ``Z`` extending a basis of ``span(B)`` to one of ``span(Z + B)``."""
    chosen, base = [], list(B)
    r = rank(base, field) if base else 0
    for v in Z:
        if rank(base + [v], field) > r:
            base.append(v)
            chosen.append(v)
            r += 1
    return chosen


def rhom_dims(e, f, field: Field = QQ) -> dict:
    return {n: len(v) for n, v in rhom(e, f, field).items()}


# ---------------------------------------------------------------------------
# equivariant Hom as a persistence module over the translation parameter


def _pair_bars(g: TamGenerator, h: TamGenerator, group: ExponentGroup, field: Field) -> list:
    breaks = sorted({x - y for x, _ in g.rays() for y, _ in h.rays()})
    samples = []
    for s in breaks:
        cx, X, Y = _hom_complex(g, h, s, field)
        samples.append((cx, _differential(cx, X, Y, field)))
    degrees = sorted({b[2] for cx, _ in samples for b in cx.basis})
    bars = []
    m = len(breaks) - 1
    for n in degrees:
        ZB = [_cocycles_and_boundaries(cx.basis, D, field, n) for cx, D in samples]

        def r(i, j):
            if i < 0 or j > m:
                return 0
            Zi = _embed(ZB[i][0], samples[i][0].basis, samples[j][0].basis, field)
            Bj = ZB[j][1]
            return rank(Zi + Bj, field) - rank(Bj, field)

        for i in range(m + 1):
            for j in range(i, m + 1):
                mult = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
                length = INF if j == m else breaks[j + 1] - breaks[i]
                bars.extend([Bar(length, STRICT, reduce_coset(group, breaks[i]), n)] * mult)
    return bars


def _require_discrete(group: ExponentGroup):
    if group.kind == "full":
        raise PreconditionError("refine to cyclic approximation")


def hom_equivariant(e: TamObject, f: TamObject) -> BarModule:
    """Hom from the orbit of ``e`` into the orbit of ``f`` as a graded Novikov module."""
    if e.group != f.group or e.field != f.field:
        raise PreconditionError("incompatible scalars")
    _require_discrete(e.group)
    bars = []
    for g in e.generators:
        for h in f.generators:
            bars.extend(_pair_bars(g, h, e.group, e.field))
    return BarModule.of(bars, e.group, e.field)


def functor_A(e: TamObject) -> BarModule:
    return hom_equivariant(TamObject.unit(e.group, e.field), e)


def functor_A_closed_form(e: TamObject) -> BarModule:
    _require_discrete(e.group)
    bars = []
    for g in e.generators:
        if g.is_ray:
            bars.append(Bar.free(reduce_coset(e.group, -g.left), g.degree))
        else:
            bars.append(Bar(g.right - g.left, STRICT, reduce_coset(e.group, -g.right), g.degree))
    return BarModule.of(bars, e.group, e.field)


def functor_B(m: BarModule) -> TamObject:
    gens = []
    for b in m.bars:
        if b.is_free:
            gens.append(TamGenerator(-b.shift, INF, b.degree))
        elif b.length > 0:
            gens.append(TamGenerator(-b.shift - b.length, -b.shift, b.degree))
    return TamObject.of(gens, m.group, m.field)


def generator_multiset(e: TamObject) -> Counter:
    return Counter(e.generators)


# ---------------------------------------------------------------------------
# End of the unit on a finite window


@dataclass(frozen=True)
class EndUnitReport:
    group: ExponentGroup
    window: Fraction
    precision: Precision
    h0_basis: tuple  # exponents g with Hom(unit, T_g unit) != 0 inside the window
    t_action_matches: bool
    h1_dim: int
    coker_source_dim: int
    coker_target_dim: int
    h1_annihilated: bool
    dense_note: str = "nonvanishing of H^1 for dense G is not desk-verifiable"

    def lines(self):
        return [
            "group: %s" % self.group,
            "window: %s" % fmt(self.window),
            "H0: Novikov ring mod precision %s, basis size %d" % (self.precision, len(self.h0_basis)),
            "T-action matches ring multiplication: %s" % ("yes" if self.t_action_matches else "no"),
            "cokernel model: %d -> %d, H1 dimension %d" % (self.coker_source_dim, self.coker_target_dim,
                                                            self.h1_dim),
            "H1 annihilated by T^%s: %s" % (fmt(self.group.d), "yes" if self.h1_annihilated else "no"),
            "note: %s" % self.dense_note,
        ]

    def __str__(self):
        return "\n".join(self.lines())


def _grid(group: ExponentGroup, lo, hi, closed_hi: bool):
    d = group.d
    out = []
    x = d * math.ceil(lo / d)
    while x < hi or (closed_hi and x == hi):
        out.append(x)
        x += d
    return out


def end_unit(group: ExponentGroup, window, boundary: str = STRICT, field: Field = QQ) -> EndUnitReport:
    """End of the unit orbit restricted to translates inside a window.

    With ``boundary='strict'`` the window is ``[-W, W)`` and ``H^0`` is the
    ring modulo ``T^W``; with ``'weak'`` it is ``[-W, W]`` and the ring is
    taken modulo ``m(W)``.
    """
    if group.kind != "cyclic":
        raise PreconditionError("end_unit needs a cyclic group")
    window = exponent(window)
    if window < 4 * group.d:
        raise PreconditionError("window must be at least 4d")
    closed = boundary != STRICT
    prec = Precision(window, not closed)
    gs = _grid(group, -window, window, closed)
    # H^0 Hom(K_{t>=0}, K_{t>=g}) for each translate, from the ray fact
    h0 = tuple(g for g in gs if ray_rhom(0, g))
    one, zero = field.coerce(1), field.coerce(0)
    # T^d acts on the H^0 basis by g -> g + d; compare with ring multiplication
    ok = True
    for g in h0:
        image = g + group.d
        in_model = image in h0
        prod = NovikovElement.monomial(g, group, prec, field) * NovikovElement.monomial(group.d, group, prec, field)
        ok &= (prod.terms == ((image, one),)) if in_model else prod.is_zero()
    # cokernel model: restriction from sections on the line to sections on t < 0
    src = gs
    tgt = [g for g in gs if g < 0]
    R = [[one if g == h else zero for g in src] for h in tgt]
    rk = rank(R, field) if R and src else 0
    h1 = len(tgt) - rk
    image_cols = [[R[i][j] for i in range(len(tgt))] for j in range(len(src))]
    annihilated = True
    for k, g in enumerate(tgt):
        v = [zero] * len(tgt)
        if g + group.d in tgt:
            v[tgt.index(g + group.d)] = one
        if rank(image_cols + [v], field) != rk:
            annihilated = False
    return EndUnitReport(group, window, prec, h0, ok, h1, len(src), len(tgt), annihilated)


# ---------------------------------------------------------------------------
# the comparison


@dataclass(frozen=True)
class TheoremCheck:
    sheaf_side: BarModule
    novikov_side: BarModule
    homs_agree: bool
    b_after_a: bool
    a_after_b: bool

    def __bool__(self):
        return self.homs_agree and self.b_after_a and self.a_after_b


def check_main_theorem_report(e: TamObject, f: TamObject) -> TheoremCheck:
    sheaf = hom_equivariant(e, f)
    Ae, Af = functor_A(e), functor_A(f)
    nov = derived_hom(Ae, Af)
    ba = all(generator_multiset(functor_B(functor_A(x))) == generator_multiset(x) for x in (e, f))
    ab = all(is_almost_isomorphic(functor_A(functor_B(m)), m) for m in (Ae, Af))
    return TheoremCheck(sheaf, nov, is_almost_isomorphic(sheaf, nov), ba, ab)


def check_main_theorem(e: TamObject, f: TamObject) -> bool:
    return bool(check_main_theorem_report(e, f))


def refinement_stable(e_gens, f_gens, steps=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)),
                      field: Field = QQ) -> bool:
    """``hom_equivariant`` is unchanged as the cyclic group is refined."""
    results = []
    for d in steps:
        g = ExponentGroup.cyclic(d)
        results.append(hom_equivariant(TamObject.of(e_gens, g, field), TamObject.of(f_gens, g, field)).bars)
    return all(r == results[0] for r in results)
