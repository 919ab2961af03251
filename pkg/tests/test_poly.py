from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from permfrac.poly import (Poly, PolyError, TruncatedSeries, UnknownVariableError, parse_poly,
                           series_mul, series_reciprocal)

NAMES = ["a", "b", "c", "q", "x"]


@st.composite
def polys(draw, max_terms=4):
    p = Poly.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        coeff = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        exps = {n: draw(st.integers(0, 2)) for n in draw(st.sets(st.sampled_from(NAMES),
                                                                 max_size=3))}
        p = p + Poly.from_monomial(exps, coeff)
    return p


def test_difference_of_squares():
    a, b = Poly.var("a"), Poly.var("b")
    assert (a + b) * (a - b) == parse_poly("a^2 - b^2")


def test_subst_color_weights():
    u = parse_poly("u^2")
    assert u.subst({"u": parse_poly("u1 + u2")}) == parse_poly("u1^2 + 2*u1*u2 + u2^2")


def test_figure_weight_evaluates_to_one():
    mono = parse_poly("a*c*d^2*g^2*h*l^2*p^3*r^3*s*t*u*w^2")
    assert mono.evaluate({n: 1 for n in mono.variables()}) == 1


def test_evaluate_requires_every_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("a + b").evaluate({"a": 1})


def test_subst_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("a").subst({"zz": 1})


def test_print_format():
    assert str(parse_poly("3*a^2*b - 1/2*c")) == "3*a^2*b - 1/2*c"


def test_rational_coefficients_and_laurent():
    p = parse_poly("(1 - q)/2 + q^-2")
    assert p.evaluate({"q": Fraction(1, 2)}) == Fraction(1, 4) + 4


def test_exact_divide():
    a, b = Poly.var("a"), Poly.var("b")
    assert ((a + b) ** 3).exact_divide(a + b) == (a + b) ** 2
    with pytest.raises(PolyError):
        (a ** 2 + b).exact_divide(a + b)


def test_reciprocal_geometric():
    r = series_reciprocal(TruncatedSeries([1, -1], 4))
    assert [c.constant() for c in r.coefficients] == [1, 1, 1, 1, 1]


def test_reciprocal_fibonacci():
    r = series_reciprocal(TruncatedSeries([1, -1, -1], 5))
    assert [c.constant() for c in r.coefficients] == [1, 1, 2, 3, 5, 8]


def test_reciprocal_needs_invertible_constant():
    with pytest.raises(PolyError):
        series_reciprocal(TruncatedSeries([0, 1], 3))


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == 0


@given(polys())
def test_parse_print_roundtrip(p):
    assert parse_poly(str(p)) == p


@given(st.lists(polys(2), min_size=1, max_size=4))
def test_series_times_reciprocal_is_one(coeffs):
    s = TruncatedSeries([1] + coeffs)
    prod = series_mul(s, series_reciprocal(s))
    assert prod[0] == 1 and all(c == 0 for c in prod.coefficients[1:])
