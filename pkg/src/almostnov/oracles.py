"""Brute-force reference computations, independent of the closed forms.

* ``smith_invariants``: invariant factors of a Novikov matrix from
  determinantal divisors (minimal valuations of all k x k minors).
* Grid modules: graded modules over ``K[S]/(S^W)`` with ``S = T^delta``,
  handled as explicit vector spaces with an ``S`` matrix; hom, Ext^1, tensor
  and Tor_1 are computed by linear algebra and decomposed by rank invariant.
* ``cellular_rhom``: derived Hom of constructible sheaves on a stratified
  line, as representations of the vertex-to-edge incidence poset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import NO_VALUATION, minor_valuations
from .exponents import INF
from .linalg import nullspace, rank
from .novikov import QQ, Field


# ---------------------------------------------------------------------------
# Smith form by determinantal divisors


def _common_denominator(values) -> int:
    q = 1
    for v in values:
        q = q * Fraction(v).denominator // math.gcd(q, Fraction(v).denominator)
    return q


def smith_invariants(matrix, field: Field = QQ):
    """Return ``(rank, [e_1 <= e_2 <= ...])`` over the fraction field.

    ``matrix`` is a list of rows of NovikovElements (or term lists).  The
    ``e_k`` are valuations of the invariant factors, ``d_k - d_{k-1}`` where
    ``d_k`` is the minimal valuation of a ``k x k`` minor.
    """
    terms = [[list(getattr(x, "terms", x)) for x in row] for row in matrix]
    m = len(terms)
    n = len(terms[0]) if m else 0
    if m == 0 or n == 0:
        return 0, []
    q = _common_denominator(e for row in terms for x in row for e, _ in x)
    D = 1 + max((int(e * q) for row in terms for x in row for e, _ in x), default=0)
    A = np.zeros((m, n, D), dtype=object)
    for i, row in enumerate(terms):
        den = _common_denominator(c for x in row for _, c in x) if field.p == 0 else 1
        for j, x in enumerate(row):
            for e, c in x:
                c = Fraction(c) * den
                A[i, j, int(e * q)] = int(c) if field.p == 0 else field.coerce(c)
    if field.p == 0 and all(abs(int(v)) < 2 ** 20 for v in A.flat):
        A = A.astype(np.int64)
    d = minor_valuations(A, field.p)
    r = max(k for k in range(len(d)) if d[k] != NO_VALUATION)
    return r, [Fraction(int(d[k] - d[k - 1]), q) for k in range(1, r + 1)]


def expected_cokernel(matrix, precision, field: Field = QQ):
    """Predicted bar lengths of the cokernel, or ``None`` when precision is too low.

    Generators are the rows; the result lists torsion lengths and the number of
    free summands.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    r, inv = smith_invariants(matrix, field) if m and n else (0, [])
    if r < min(m, n) or any(not precision.keeps(e) for e in inv):
        return None
    return sorted(e for e in inv if e > 0), m - r


# ---------------------------------------------------------------------------
# graded modules over a truncated grid ring


@dataclass
class GridModule:
    """Direct sum of cyclic modules ``S^start K[S] / S^end`` (degrees in grid units)."""

    summands: list  # [(start, end)] with end possibly the window top
    top: int

    def basis(self):
        return [(i, t) for i, (a, b) in enumerate(self.summands) for t in range(a, b)]


def grid_module(bars, delta: Fraction, top: int) -> GridModule:
    """Grid restriction of bars; weak or left-open ends move by one grid step."""
    out = []
    for b in bars:
        start = Fraction(b.shift) / delta + (0 if b.closed_left else 1)
        if b.length == INF:
            end = top
        else:
            end = (Fraction(b.shift) + b.length) / delta + (1 if b.boundary == "weak" else 0)
        if start.denominator != 1 or end.denominator != 1:
            raise ValueError("bar not aligned with the grid")
        if end > start:
            out.append((int(start), min(int(end), top)))
    return GridModule(out, top)


class _Space:
    """Basis-indexed vectors of a grid module with the shift-by-S operator."""

    def __init__(self, mod: GridModule, field: Field):
        self.mod = mod
        self.field = field
        self.basis = mod.basis()
        self.index = {b: k for k, b in enumerate(self.basis)}

    def degree_part(self, t):
        return [k for k, (i, s) in enumerate(self.basis) if s == t]

    def unit(self, k):
        v = [self.field.coerce(0)] * len(self.basis)
        v[k] = self.field.coerce(1)
        return v

    def S(self, v, power=1):
        out = [self.field.coerce(0)] * len(self.basis)
        for k, x in enumerate(v):
            if x == 0:
                continue
            i, s = self.basis[k]
            tgt = (i, s + power)
            if tgt in self.index:
                out[self.index[tgt]] = x
        return out


def _subquotient_bars(space: _Space, Z: dict, B: dict):
    """Rank-invariant decomposition of the graded subquotient ``Z/B``.

    ``Z[t]``, ``B[t]`` span the degree-``t`` pieces, and ``S`` raises degree by
    one; each summand is reported as a half-open degree interval.
    """
    degs = sorted(t for t in Z if rank(Z[t] + B.get(t, []), space.field) > rank(B.get(t, []), space.field))
    if not degs:
        return []
    lo, hi = degs[0], degs[-1]
    field = space.field

    def r(a, b):
        if a < lo or b > hi:
            return 0
        img = [space.S(v, b - a) for v in Z.get(a, [])]
        base = B.get(b, [])
        return rank(img + base, field) - rank(base, field)

    out = []
    for a in range(lo, hi + 1):
        for b in range(a, hi + 1):
            mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1)
            out.extend([(a, b + 1)] * mult)
    return out


def _kernel_of_S_power(space: _Space, t: int, power: int):
    idx = space.degree_part(t)
    if not idx:
        return []
    cols = [space.S(space.unit(k), power) for k in idx]
    nrows = len(space.basis)
    rows = [[cols[c][rr] for c in range(len(idx))] for rr in range(nrows)]
    vecs = []
    for sol in nullspace(rows, len(idx), space.field):
        v = [space.field.coerce(0)] * len(space.basis)
        for c, k in enumerate(idx):
            v[k] = sol[c]
        vecs.append(v)
    return vecs


def _all(space: _Space, t: int):
    return [space.unit(k) for k in space.degree_part(t)]


def grid_hom(x: int, a, N: GridModule, field: Field = QQ):
    """Hom and Ext^1 of ``S^x K[S]/S^a`` (``a=None`` for free) into ``N``.

    Returns two interval lists in grid units of the hom degree.
    """
    sp = _Space(N, field)
    degs = range(-2 * N.top, 2 * N.top)
    Z0, Z1, B1 = {}, {}, {}
    for k in degs:
        t = x + k
        Z0[k] = _all(sp, t) if a is None else _kernel_of_S_power(sp, t, a)
        if a is not None:
            Z1[k] = _all(sp, x + a + k)
            B1[k] = [sp.S(v, a) for v in _all(sp, x + k)]
    h0 = _subquotient_bars(sp, Z0, {})
    h1 = _subquotient_bars(sp, Z1, B1) if a is not None else []
    return h0, h1


def grid_tensor(x: int, a, N: GridModule, field: Field = QQ):
    """Tor_0 and Tor_1 of ``S^x K[S]/S^a`` with ``N``."""
    sp = _Space(N, field)
    Z0, B0, Z1 = {}, {}, {}
    for k in range(-2 * N.top, 2 * N.top):
        Z0[k] = _all(sp, k - x)
        if a is not None:
            B0[k] = [sp.S(v, a) for v in _all(sp, k - x - a)]
            Z1[k] = _kernel_of_S_power(sp, k - x - a, a)
    t0 = _subquotient_bars(sp, Z0, B0)
    t1 = _subquotient_bars(sp, Z1, {}) if a is not None else []
    return t0, t1


# ---------------------------------------------------------------------------
# constructible sheaves on a stratified line


@dataclass(frozen=True)
class Piece:
    """The constant sheaf on ``[lo, hi)`` extended by zero (``hi`` may be inf)."""

    lo: Fraction
    hi: object = INF


def _cells(points):
    """Cells of the stratification: ``('e', i)`` edges and ``('v', i)`` vertices."""
    pts = sorted(set(points))
    cells = [("e", 0, None, pts[0] if pts else None)]
    for i, p in enumerate(pts):
        cells.append(("v", p, p, p))
        cells.append(("e", i + 1, p, pts[i + 1] if i + 1 < len(pts) else None))
    return pts, cells


def _inside(piece: Piece, cell) -> bool:
    kind, _, left, right = cell
    hi = piece.hi
    if kind == "v":
        return piece.lo <= left and (hi == INF or left < hi)
    lo_ok = left is not None and left >= piece.lo
    hi_ok = hi == INF or (right is not None and right <= hi)
    return lo_ok and hi_ok


def cellular_rhom(F, G, field: Field = QQ, extra_points=()):
    """Dimensions ``(H^0, H^1)`` of ``RHom(F, G)`` for sums of pieces.

    Constructible sheaves are functors on the incidence poset (vertex to
    adjacent edge); the poset has height one, so RHom is the two-term complex
    ``prod_c Hom(F_c, G_c) -> prod_{v<e} Hom(F_v, G_e)``.
    """
    pts = [p.lo for p in F + G] + [p.hi for p in F + G if p.hi != INF] + list(extra_points)
    _, cells = _cells(pts)
    arrows = []
    for k, c in enumerate(cells):
        if c[0] == "v":
            arrows.append((k, k - 1))
            arrows.append((k, k + 1))
    stalkF = [[i for i, p in enumerate(F) if _inside(p, c)] for c in cells]
    stalkG = [[j for j, p in enumerate(G) if _inside(p, c)] for c in cells]
    # coordinates of C^0: (cell, i, j) meaning F-piece i -> G-piece j at that cell
    c0 = [(k, i, j) for k in range(len(cells)) for i in stalkF[k] for j in stalkG[k]]
    c1 = [(v, e, i, j) for v, e in arrows for i in stalkF[v] for j in stalkG[e]]
    pos0 = {x: n for n, x in enumerate(c0)}
    one, zero = field.coerce(1), field.coerce(0)
    D = [[zero] * len(c0) for _ in c1]
    for r, (v, e, i, j) in enumerate(c1):
        # G(v->e) . phi_v : the G-piece j survives from v to e
        if j in stalkG[v] and (v, i, j) in pos0:
            D[r][pos0[(v, i, j)]] += one
        # phi_e . F(v->e)
        if i in stalkF[e] and (e, i, j) in pos0:
            D[r][pos0[(e, i, j)]] -= one
    rk = rank(D, field) if c1 and c0 else 0
    return len(c0) - rk, len(c1) - rk


# ---------------------------------------------------------------------------
# energy cutoff telescope on the grid


def grid_telescope_exact(step: Fraction, c: Fraction, stages: int, field: Field = QQ) -> list:
    """Whether ``ker d == im d`` at each interior stage of the grid telescope.

    Each stage is ``K[S]/S^n`` with ``S = T^(1/q)`` and ``n = c q``; the
    differential is multiplication by ``S^(step q)``.  Subspaces are compared
    by ranks of their spans.
    """
    q = math.lcm(Fraction(step).denominator, Fraction(c).denominator)
    n, s = int(c * q), int(step * q)
    one, zero = field.coerce(1), field.coerce(0)
    d = [[one if i == j + s else zero for j in range(n)] for i in range(n)]
    ker = nullspace(d, n, field)
    im = [[d[i][j] for i in range(n)] for j in range(n)]
    im = [v for v in im if any(x != 0 for x in v)]
    out = []
    for _ in range(1, stages - 1):
        rk, ri, rj = rank(ker, field) if ker else 0, rank(im, field) if im else 0, rank(ker + im, field)
        out.append(rk == ri == rj)
    return out
