from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from almostnov.bars import STRICT, WEAK, Bar, BarModule, is_almost_isomorphic
from almostnov.errors import PreconditionError
from almostnov.exponents import INF, ExponentGroup
from almostnov.oracles import Piece, cellular_rhom
from almostnov.tamarkin import (TamGenerator, TamObject, check_main_theorem, check_main_theorem_report,
                                end_unit, functor_A, functor_A_closed_form, functor_B, generator_multiset,
                                hom_equivariant, ray_rhom, refinement_stable, rhom, rhom_dims)

Z = ExponentGroup.cyclic(1)
TRIVIAL = ExponentGroup.trivial()
QUARTERS = [Fraction(k, 4) for k in range(-16, 17)]


def piece(g: TamGenerator):
    """Underlying sheaf and the cohomological degree it sits in."""
    if g.is_ray:
        return Piece(g.left), g.degree
    return Piece(g.left, g.right), g.degree - 1


def cellular_dims(g, h):
    (F, i), (G, j) = piece(g), piece(h)
    ext = cellular_rhom([F], [G])
    return {k - i + j: d for k, d in enumerate(ext) if d}


@st.composite
def generators(draw, points=QUARTERS, degrees=(0,)):
    a = draw(st.sampled_from(points[:-1]))
    b = draw(st.sampled_from([x for x in points if x > a] + [INF]))
    return TamGenerator(a, b, draw(st.sampled_from(degrees)))


def test_ray_facts():
    assert ray_rhom(0, 1) == {0: 1}
    assert ray_rhom(0, -1) == {}
    assert rhom(TamGenerator(0), TamGenerator(-1, 0)) == {0: [((0, 0),)]}
    assert rhom(TamGenerator(0), TamGenerator(0, 1)) == {}


def test_generator_validation():
    with pytest.raises(PreconditionError):
        TamGenerator(1, 1)
    assert str(TamGenerator(0, "3/2", 1)) == "[0, 3/2) degree 1"


HALF_POINTS = [Fraction(k, 2) for k in range(-4, 5)]
COARSE = [TamGenerator(a, b) for a in HALF_POINTS[:-1] for b in [x for x in HALF_POINTS if x > a] + [INF]]


@pytest.mark.parametrize("g", COARSE, ids=str)
def test_rhom_matches_cellular_oracle_exhaustive(g):
    for h in COARSE:
        assert rhom_dims(g, h) == cellular_dims(g, h), (str(g), str(h))


@given(generators(degrees=(-1, 0, 1)), generators(degrees=(-1, 0, 1)))
def test_rhom_matches_cellular_oracle(g, h):
    assert rhom_dims(g, h) == cellular_dims(g, h)


@given(generators(points=QUARTERS[4:-4]), generators(points=QUARTERS[4:-4]))
def test_equivariant_hom_fibers_match_oracle(g, h):
    """Over the trivial group every bar records RHom at a translation parameter."""
    bars = hom_equivariant(TamObject.of([g], TRIVIAL), TamObject.of([h], TRIVIAL)).bars
    for s in QUARTERS:
        counted = {}
        for b in bars:
            if b.interval().contains(s):
                counted[b.degree] = counted.get(b.degree, 0) + 1
        assert counted == cellular_dims(g, h.translate(s)), (str(g), str(h), s)


def test_hom_example_has_two_degrees():
    e = TamObject.of([TamGenerator(0, 1)], Z)
    f = TamObject.of([TamGenerator(2, 3)], Z)
    assert [str(b) for b in hom_equivariant(e, f)] == ["(1, strict) shift 0 degree 0",
                                                       "(1, strict) shift 0 degree 1"]


def test_dense_group_is_refused():
    e = TamObject.of([TamGenerator(0, 1)], ExponentGroup.full())
    with pytest.raises(PreconditionError, match="refine"):
        hom_equivariant(e, e)


def test_functor_A_examples():
    orbit = TamObject.of([TamGenerator(0, "3/2")], Z)
    assert [str(b) for b in functor_A(orbit)] == ["(3/2, strict) shift 1/2 degree 0"]
    assert functor_A(TamObject.unit(Z)) == BarModule.of([Bar.free()], Z)


@given(st.lists(generators(points=[Fraction(k, 2) for k in range(0, 9)], degrees=(0, 1)), max_size=3),
       st.sampled_from([TRIVIAL, Z, ExponentGroup.cyclic("1/2")]))
def test_functor_A_pipelines_agree(gens, group):
    e = TamObject.of(gens, group)
    assert functor_A(e) == functor_A_closed_form(e)
    assert generator_multiset(functor_B(functor_A(e))) == generator_multiset(e)


@given(st.lists(st.tuples(st.sampled_from([Fraction(k, 4) for k in range(0, 9)] + [INF]),
                          st.sampled_from([STRICT, WEAK]), st.integers(0, 8), st.integers(-1, 1)), max_size=4))
def test_A_after_B_is_almost_identity(raw):
    bars = []
    for length, boundary, shift, degree in raw:
        if length == 0:
            bars.append(Bar(0, WEAK, Fraction(shift, 4), degree))
        else:
            bars.append(Bar(length, STRICT if length == INF else boundary, Fraction(shift, 4), degree))
    m = BarModule.of(bars, Z)
    assert is_almost_isomorphic(functor_A(functor_B(m)), m)


def test_main_theorem_small_cases():
    e = TamObject.of([TamGenerator(0, 1)], Z)
    f = TamObject.of([TamGenerator(0, 2)], Z)
    rep = check_main_theorem_report(e, f)
    assert rep.homs_agree and rep.b_after_a and rep.a_after_b
    assert check_main_theorem(TamObject.of([], Z), f)
    assert check_main_theorem(e + f, TamObject.unit(Z))


def test_refinement_stability():
    assert refinement_stable([TamGenerator(0, 1)], [TamGenerator("1/2", 2)])
    assert refinement_stable([TamGenerator(0)], [TamGenerator(0, "3/2"), TamGenerator(1)])


def test_end_unit_integral():
    rep = end_unit(Z, 8)
    assert len(rep.h0_basis) == 8 and rep.h0_basis == tuple(range(8))
    assert str(rep.precision) == "8:strict"
    assert rep.t_action_matches and rep.h1_annihilated


def test_end_unit_quarter_weak():
    g = ExponentGroup.cyclic("1/4")
    rep = end_unit(g, 4, WEAK)
    assert len(rep.h0_basis) == 17 and str(rep.precision) == "4:weak"
    assert rep.t_action_matches and rep.h1_annihilated
    assert "not desk-verifiable" in str(rep)


def test_end_unit_preconditions():
    with pytest.raises(PreconditionError):
        end_unit(Z, 3)
    with pytest.raises(PreconditionError):
        end_unit(ExponentGroup.full(), 8)
