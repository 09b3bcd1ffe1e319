from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from almostnov.errors import IncompatibleScalars, ParseError, PrecisionError, PreconditionError
from almostnov.exponents import INF, ExponentGroup
from almostnov.novikov import (EXACT, QQ, Field, NovikovElement, Precision, coarser, divide,
                               format_element, invert_unit, parse_element, truncate, valuation)

from conftest import F5, FULL, elements

W6 = Precision.weak(6)


def el(text, precision=W6, field=QQ, group=FULL):
    return parse_element(text, group, precision, field)


def test_weak_drops_only_exponents_above_bound():
    x = el("1 + T^6 + T^(13/2)")
    assert x.terms == ((0, 1), (6, 1))


def test_strict_drops_the_bound_itself():
    x = el("1 + T^6", Precision.strict_at(6))
    assert x.terms == ((0, 1),)


def test_precision_order_and_parse():
    assert Precision.strict_at(4) < Precision.weak(4) < Precision.strict_at(5) < EXACT
    assert coarser(Precision.weak(3), EXACT) == Precision.weak(3)
    assert str(Precision.parse("8:strict")) == "8:strict"
    assert Precision.parse("inf") == EXACT
    with pytest.raises(ValueError):
        Precision.parse("3:loose")


def test_field_parse():
    assert Field.parse("f5") == F5 and Field.parse("q") == QQ
    for bad in ["f4", "f1", "r"]:
        with pytest.raises(ValueError):
            Field.parse(bad)


def test_multiplication_and_valuation():
    a = el("1 + T^(1/2)")
    b = el("1 - T^(1/2)")
    assert (a * b).terms == ((0, 1), (1, -1))
    assert valuation(el("3*T^(2/3) + T^2")) == Fraction(2, 3)
    assert valuation(el("0")) == INF


def test_characteristic_p_coefficients():
    a = el("3 + 4*T", field=F5)
    assert (a + a).terms == ((0, 1), (1, 3))
    assert (a.scale(5)).is_zero()


def test_group_membership_enforced():
    with pytest.raises(PreconditionError):
        el("T^(1/2)", group=ExponentGroup.cyclic(1))


def test_mixed_scalars_rejected():
    with pytest.raises(IncompatibleScalars):
        el("1") + el("1", field=F5)


def test_truncate_only_coarsens():
    x = el("1 + T^2", Precision.weak(4))
    assert truncate(x, Precision.weak(1)).terms == ((0, 1),)
    with pytest.raises(PrecisionError):
        truncate(x, Precision.weak(5))


def test_invert_unit_geometric_series():
    u = el("1 - T", Precision.strict_at(4))
    inv = invert_unit(u)
    assert inv.terms == ((0, 1), (1, 1), (2, 1), (3, 1))
    with pytest.raises(PreconditionError):
        invert_unit(el("T"))


def test_divide():
    a = el("T^2 + T^3")
    b = el("T^2")
    q = divide(a, b)
    assert (q * b).terms == a.terms
    with pytest.raises(PreconditionError):
        divide(b, a.scale(1) * el("T"))
    with pytest.raises(PrecisionError):
        divide(a, el("T^7"))


def test_parse_and_format():
    x = el("2*T^(1/2) - 3 + T^3", Precision.weak(2))
    assert format_element(x) == "-3 + 2*T^(1/2) @2:weak"
    assert parse_element("1 + T @3:strict", FULL).precision == Precision.strict_at(3)
    for bad, col in [("1 +* T", 3), ("", 1), ("T^(x)", 2), ("2 T^2 3", 7)]:
        with pytest.raises(ParseError) as info:
            parse_element(bad, FULL)
        assert info.value.column == col, bad


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    assert (a * b).terms == (b * a).terms
    assert ((a * b) * c).terms == (a * (b * c)).terms
    assert (a * (b + c)).terms == (a * b + a * c).terms
    one = NovikovElement.one(FULL, W6)
    assert (a * one).terms == a.terms


@given(elements(field=F5), elements(field=F5))
def test_valuation_axioms_mod_5(a, b):
    prod = a * b
    if not prod.is_zero():
        assert valuation(prod) == valuation(a) + valuation(b)
    s = a + b
    if not s.is_zero():
        assert valuation(s) >= min(valuation(a), valuation(b))
    if valuation(a) != valuation(b):
        assert valuation(s) == min(valuation(a), valuation(b))


@given(st.integers(1, 12).map(lambda k: Fraction(k, 2)), elements(precision=EXACT))
def test_truncation_is_a_ring_map(r, a):
    p = Precision.weak(r)
    b = NovikovElement.build(a.terms, FULL, p)
    assert (truncate(a * a, p)).terms == (b * b).terms


@given(elements(precision=Precision.weak(5)), st.integers(1, 4), st.sampled_from([QQ, F5]))
def test_unit_inverse(rest, c0, field):
    rest = NovikovElement.build([(e, c) for e, c in rest.terms if e > 0], FULL, Precision.weak(5), field)
    u = NovikovElement.build([(0, c0)], FULL, Precision.weak(5), field) + rest
    assert (u * invert_unit(u)).terms == ((0, 1),)
