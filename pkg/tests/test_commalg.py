from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weylforge import commalg
from weylforge.errors import IncompatibleCoefficients, NotCofinite, NotCoprime
from weylforge.poly import Poly, parse_poly

t = Poly.var(1, 0)
one = Poly.const(1, 1)


def test_codims(A):
    assert commalg.codim(commalg.point_ideal(A, {0: 3})) == 3
    assert commalg.codim(commalg.point_ideal(A, {0: 1, 1: 1})) == 2
    gen = commalg.generated_ideal(A, [parse_poly("t^2 - t", 1)], 6)
    assert commalg.codim(gen) == 2


def test_codim_two_variables():
    A2 = commalg.PolyAlgebra(2)
    I = commalg.point_ideal(A2, {(0, 0): 2})
    # (x, y)^2 leaves 1, x, y
    assert commalg.codim(I) == 3
    assert commalg.codim(commalg.power(I, 2)) == 10


def test_bezout_examples(A):
    I, J = commalg.maximal_ideal(A, 0), commalg.maximal_ideal(A, 1)
    f, g = commalg.bezout_witness(I, J, 2)
    assert f == t * t * (3 - 2 * t)
    assert g == (t - 1) * (t - 1) * (2 * t + 1)


def test_bezout_not_coprime(A):
    with pytest.raises(NotCoprime):
        commalg.bezout_witness(commalg.maximal_ideal(A, 0), commalg.point_ideal(A, {0: 2}), 1)


def test_power_and_intersection(A):
    I = commalg.point_ideal(A, {0: 1, 2: 2})
    assert commalg.power(I, 3).exponents() == {(Fraction(0),): 3, (Fraction(2),): 6}
    assert commalg.power(I, 0).is_unit
    J = commalg.point_ideal(A, {2: 1, 5: 1})
    both = commalg.intersect(I, J)
    assert both.exponents() == {(Fraction(0),): 1, (Fraction(2),): 2, (Fraction(5),): 1}
    assert commalg.contains(I, both) and commalg.contains(J, both)
    assert not commalg.contains(both, I)


def test_quotient_structure(A):
    Q = commalg.quotient_algebra(commalg.point_ideal(A, {0: 2, 1: 1}))
    assert Q.dim == 3
    # t * t = 0 in the jet at 0 up to order 2, and t^2 evaluates to 1 at 1
    tt = Q.image(t * t)
    assert Q.evaluate(tt, 1) == 1 and Q.evaluate(tt, 0) == 0
    assert Q.mul(Q.image(t), Q.image(t)) == tt
    assert Q.one_index is None
    Q.check_axioms()


def test_quotient_generated(A):
    Q = commalg.quotient_algebra(commalg.generated_ideal(A, [t ** 3], 6))
    assert Q.dim == 3
    assert Q.one_index is not None
    assert Q.mul(Q.image(t * t), Q.image(t)) == {}


def test_ideal_image(A):
    Q = commalg.quotient_algebra(commalg.point_ideal(A, {0: 3}))
    assert len(Q.ideal_image(commalg.point_ideal(A, {0: 1}))) == 2
    with pytest.raises(IncompatibleCoefficients):
        Q.ideal_image(commalg.point_ideal(A, {0: 4}))


def test_generated_truncation_too_small(A):
    with pytest.raises(NotCofinite):
        commalg.codim(commalg.generated_ideal(A, [t ** 5 + t], 2))


points = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def coprime_pair(draw):
    pts = draw(st.lists(points, min_size=2, max_size=4, unique=True))
    k = draw(st.integers(1, len(pts) - 1))
    exps = draw(st.lists(st.integers(1, 3), min_size=len(pts), max_size=len(pts)))
    A = commalg.PolyAlgebra(1)
    I = commalg.point_ideal(A, dict(zip(pts[:k], exps[:k])))
    J = commalg.point_ideal(A, dict(zip(pts[k:], exps[k:])))
    return I, J


@given(coprime_pair(), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_bezout_property(pair, N):
    I, J = pair
    f, g = commalg.bezout_witness(I, J, N)
    assert f + g == one
    # membership by vanishing order, checked directly
    for p, k in I.support:
        assert f.vanishing_order(p) >= N * k
    for p, k in J.support:
        assert g.vanishing_order(p) >= N * k


@given(coprime_pair())
@settings(max_examples=40, deadline=None)
def test_crt_codim_additive(pair):
    I, J = pair
    assert commalg.codim(commalg.intersect(I, J)) == commalg.codim(I) + commalg.codim(J)
    assert commalg.coprime(I, J)


@given(coprime_pair())
@settings(max_examples=20, deadline=None)
def test_quotient_matches_dense_oracle(pair):
    """dim A/(I cap J) equals the degree of the product polynomial."""
    I, J = pair
    prod = one
    for p, k in I.support + J.support:
        prod = prod * (t - p[0]) ** k
    Q = commalg.quotient_algebra(commalg.intersect(I, J))
    assert Q.dim == prod.degree()
    assert Q.image(prod) == {}
