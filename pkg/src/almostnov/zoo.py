"""Catalogue of completeness examples over the Novikov ring, with certificates.

Sequences are indexed from ``i = 0`` and stored lazily; the map
``phi: (x_i) -> (T^i x_i)`` from the completed sum into the product is the
source of the homomorphism-theorem failure catalogued as ``nonabel_cokernel``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import PreconditionError
from .exponents import ExponentGroup, exponent, fmt
from .novikov import EXACT, QQ, NovikovElement, format_element, valuation

FULL = ExponentGroup.full()


def _mono(e) -> NovikovElement:
    return NovikovElement.monomial(exponent(e), FULL, EXACT, QQ)


def _zero() -> NovikovElement:
    return NovikovElement.zero(FULL, EXACT, QQ)


@dataclass(frozen=True)
class LazySequence:
    """A sequence ``(x_0, x_1, ...)`` of Novikov elements given by a rule.

    ``v(x_i) >= slope * i + intercept`` is the declared valuation bound;
    ``support`` is the number of leading terms outside of which ``x_i = 0``
    (``None`` for infinite support).
    """

    term: Callable[[int], NovikovElement]
    slope: Fraction = Fraction(0)
    intercept: Fraction = Fraction(0)
    support: int | None = None
    label: str = ""

    def prefix(self, n: int) -> list:
        return [self.term(i) if self.support is None or i < self.support else _zero() for i in range(n)]

    def check_bound(self, n: int) -> bool:
        """The declared valuation bound holds on the first ``n`` terms."""
        for i, x in enumerate(self.prefix(n)):
            if not x.is_zero() and valuation(x) < self.slope * i + self.intercept:
                return False
        return True

    def nonzero_beyond(self, stage: int, horizon: int) -> bool:
        """Some ``x_i`` with ``stage <= i < horizon`` is nonzero."""
        return any(not x.is_zero() for x in self.prefix(horizon)[stage:])

    def in_direct_sum(self) -> bool:
        return self.support is not None

    def in_completed_sum(self) -> bool:
        return self.support is not None or self.slope > 0

    def __str__(self):
        shown = ", ".join(format_element(x, with_precision=False) for x in self.prefix(4))
        return "(%s, ...)" % shown if self.label == "" else "%s = (%s, ...)" % (self.label, shown)


def phi(x: LazySequence) -> LazySequence:
    """``(x_i) -> (T^i x_i)``."""
    return LazySequence(lambda i: _mono(i) * x.term(i), x.slope + 1, x.intercept, x.support)


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class NotInDirectSum:
    """``x_i = T^i`` lies in the completion but has nonzero terms past every stage."""

    sequence: LazySequence

    def verify(self, horizon: int = 16) -> bool:
        s = self.sequence
        return (s.check_bound(horizon) and s.in_completed_sum() and not s.in_direct_sum()
                and all(s.nonzero_beyond(k, horizon) for k in range(horizon)))

    def __str__(self):
        return "%s lies in the completion, not in the direct sum" % self.sequence


@dataclass(frozen=True)
class LaurentQuotientVanishes:
    """Every ``x = T^-k a`` equals ``T^n (T^-(k+n) a)``, so ``M / T^n M = 0``."""

    def divide(self, k: int, a: NovikovElement, n) -> tuple:
        return (k + n, a)

    def verify(self, samples=((0, "1"), (2, "3"), (5, "1/2")), ns=(1, 2, 4, 8)) -> bool:
        for k, e in samples:
            a = _mono(Fraction(e))
            for n in ns:
                kk, b = self.divide(k, a, n)
                # T^n * T^-kk * b == T^-k * a, compared after clearing denominators
                if _mono(n) * b * _mono(k) != a * _mono(kk):
                    return False
        return True

    def __str__(self):
        return "x = T^n * (T^-n x) for every n, so each quotient by T^n vanishes"


@dataclass(frozen=True)
class NonabelWitness:
    """``(1, T, T^2, ...)`` is hit by ``phi`` modulo ``m(N)`` but not exactly."""

    N: Fraction
    preimage: LazySequence
    exact_preimage: LazySequence
    horizon: int

    def residual(self) -> list:
        target = [_mono(i) for i in range(self.horizon)]
        return [y - t for y, t in zip(phi(self.preimage).prefix(self.horizon), target)]

    def hit_modulo(self) -> bool:
        return all(r.is_zero() or valuation(r) >= self.N for r in self.residual())

    def hit_exactly(self) -> bool:
        """The only candidate preimage is ``x_i = 1``; it is not in the completed sum."""
        return self.exact_preimage.in_completed_sum()

    def verify(self) -> bool:
        return self.hit_modulo() and not self.hit_exactly()

    def __str__(self):
        lines = ["x = (%s, ...)" % ", ".join(format_element(t, with_precision=False)
                                           for t in self.preimage.prefix(self.preimage.support + 2)),
                 "phi(x) - (1, T, T^2, ...) has valuation >= %s: %s"
                 % (fmt(self.N), "yes" if self.hit_modulo() else "no"),
                 "hit exactly: %s" % ("yes" if self.hit_exactly() else "no")]
        return "\n".join(lines)


def nonabel_witness(N) -> NonabelWitness:
    N = exponent(N)
    if N <= 0:
        raise PreconditionError("precision must be positive")
    support = math.ceil(N)
    one = lambda i: _mono(0)  # noqa: E731
    x = LazySequence(one, Fraction(0), Fraction(0), support, "x")
    exact = LazySequence(one, Fraction(0), Fraction(0), None, "x")
    w = NonabelWitness(N, x, exact, support + 4)
    if not w.verify():
        raise AssertionError("nonabel witness failed to verify")
    return w


# ---------------------------------------------------------------------------
# the catalogue


def _yn(flag) -> str:
    return "not stated" if flag is None else ("yes" if flag else "no")


@dataclass(frozen=True)
class ZooEntry:
    name: str
    shape: str
    complete: bool | None
    derived_complete: bool | None
    separated: bool | None
    witness: object = field(default=None, compare=False)

    def flags_line(self) -> str:
        return "complete: %s, derived-complete: %s, separated: %s" % (
            _yn(self.complete), _yn(self.derived_complete), _yn(self.separated))

    def __str__(self):
        lines = ["name: %s" % self.name, "shape: %s" % self.shape, self.flags_line()]
        if self.witness is not None:
            lines.append("witness: %s" % str(self.witness).replace("\n", "\n  "))
        return "\n".join(lines)


_TABLE = {
    "lambda0": ("Λ₀", True, True, True),
    "direct_sum": ("⊕_ℕΛ₀", False, False, True),
    "completed_direct_sum": ("⊕̂_ℕΛ₀", True, True, True),
    "product": ("∏_ℕΛ₀", True, True, True),
    "laurent": ("Λ₀[T^{−1}]", False, False, False),
    "residue_field": ("Λ₀/𝔪", True, True, True),
    "tensor_completed_sums": ("(⊕̂_ℕΛ₀)⊗(⊕̂_ℕΛ₀)", False, None, None),
    "nonabel_cokernel": ("∏_ℕΛ₀/φ(⊕̂_ℕΛ₀)", False, True, False),
}

CATALOGUE = tuple(_TABLE)


def _witness(name: str):
    if name == "direct_sum":
        return NotInDirectSum(LazySequence(_mono, Fraction(1), Fraction(0), None, "x"))
    if name == "laurent":
        return LaurentQuotientVanishes()
    if name == "nonabel_cokernel":
        return nonabel_witness(3)
    return None


def classify(name: str) -> ZooEntry:
    if name not in _TABLE:
        raise PreconditionError("unknown zoo entry %r (known: %s)" % (name, ", ".join(CATALOGUE)))
    shape, c, d, s = _TABLE[name]
    return ZooEntry(name, shape, c, d, s, _witness(name))


# ---------------------------------------------------------------------------
# lazy shapes and their completions


@dataclass(frozen=True)
class DirectSum:
    """Countable direct sum of copies of the Novikov ring."""


@dataclass(frozen=True)
class Product:
    """Countable product of copies of the Novikov ring."""


@dataclass(frozen=True)
class Laurent:
    """The Novikov ring with ``T`` inverted."""


@dataclass(frozen=True)
class Completion:
    entry: ZooEntry | None  # None: the completion is zero
    contains: Callable[[LazySequence], bool]

    def __str__(self):
        return "0" if self.entry is None else str(self.entry)


def completion_of(shape) -> Completion:
    if isinstance(shape, DirectSum):
        return Completion(classify("completed_direct_sum"), LazySequence.in_completed_sum)
    if isinstance(shape, Product):
        return Completion(classify("product"), lambda s: True)
    if isinstance(shape, Laurent):
        return Completion(None, lambda s: s.support == 0)
    raise PreconditionError("not classifiable")


# ---------------------------------------------------------------------------
# energy cutoff telescope


@dataclass(frozen=True)
class TelescopeReport:
    step: Fraction
    modulus: Fraction
    stages: int
    kernel_from: Fraction  # ker T^step = {v >= c - step}
    image_from: Fraction  # im T^step = {v >= step}

    @property
    def acyclic(self) -> bool:
        return self.kernel_from == self.image_from

    def __bool__(self):
        return self.acyclic

    def __str__(self):
        return "\n".join([
            "stages: %d, step: %s, modulus: %s" % (self.stages, fmt(self.step), fmt(self.modulus)),
            "kernel: valuation >= %s" % fmt(self.kernel_from),
            "image: valuation >= %s" % fmt(self.image_from),
            "acyclic: %s" % ("true" if self.acyclic else "false"),
        ])


def telescope_report(step, c, k: int = 3) -> TelescopeReport:
    """``k`` copies of ``L/T^c`` joined by multiplication by ``T^step``.

    Every interior stage looks the same, so one kernel/image comparison
    settles them all.
    """
    step, c = exponent(step), exponent(c)
    if k < 3:
        raise PreconditionError("need at least 3 stages")
    if not 0 < step < c:
        raise PreconditionError("need 0 < step < modulus")
    return TelescopeReport(step, c, k, c - step, step)


def telescope_check(step, c, k: int = 3) -> bool:
    return telescope_report(step, c, k).acyclic


__all__ = [
    "CATALOGUE", "Completion", "DirectSum", "Laurent", "LaurentQuotientVanishes", "LazySequence",
    "NonabelWitness", "NotInDirectSum", "Product", "TelescopeReport", "ZooEntry", "classify",
    "completion_of", "nonabel_witness", "phi", "telescope_check", "telescope_report",
]
