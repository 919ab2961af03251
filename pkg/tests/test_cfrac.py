from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from permfrac.cfrac import (PARAMETERS, BoundError, JacobiCoefficients, ParamAssignment,
                            bracket, brute_force_gf, moments, parse_assignments,
                            parse_param_file, verify_main)
from permfrac.colored import q_factorial
from permfrac.poly import Poly, parse_poly


def test_bracket_examples():
    assert bracket(0, "c", "d") == 0
    assert bracket(2, "c", "d") == parse_poly("c + d")
    assert bracket(3, "q", 1) == parse_poly("q^2 + q + 1")


def test_jacobi_coefficients():
    jc = JacobiCoefficients(ParamAssignment.symbolic())
    assert jc.alpha(0) == parse_poly("u")
    assert jc.alpha(2) == parse_poly("u*w^2 + s*(a + b) + t*(f + g)")
    assert jc.beta(2) == parse_poly("p*r*(c + d)*(h + l)")
    with pytest.raises(ValueError):
        jc.beta(0)


def test_factorials():
    assert moments(ParamAssignment.constant(1), 6) == [1, 1, 2, 6, 24, 120, 720]


def test_derangements():
    assert moments(ParamAssignment.constant(1, u=0), 6) == [1, 0, 1, 2, 9, 44, 265]


def test_euler_numbers():
    ms = moments(ParamAssignment.constant(1, s=0, t=0, u=0), 8)
    assert ms == [1, 0, 1, 0, 5, 0, 61, 0, 1385]


def test_brute_force_small():
    assert brute_force_gf(0) == 1
    assert brute_force_gf(1) == parse_poly("u")
    assert brute_force_gf(2) == parse_poly("u^2 + p*r")


def test_verify_main_to_six():
    rep = verify_main(6)
    assert rep.ok and len(rep.checks) == 7


def test_verify_main_zero():
    assert verify_main(0).ok


def test_bounds():
    with pytest.raises(BoundError):
        moments(ParamAssignment.symbolic(), 9)
    with pytest.raises(BoundError):
        brute_force_gf(9)
    with pytest.raises(BoundError):
        moments(ParamAssignment.constant(1), 65)
    assert len(moments(ParamAssignment.symbolic(), 9, symbolic_bound=9)) == 10


def test_symbolic_m2():
    assert moments(ParamAssignment.symbolic(), 2)[2] == parse_poly("u^2 + p*r")


def test_inversion_law_is_q_factorial():
    from permfrac.colored import inversion_params
    ms = moments(inversion_params(), 8)
    assert all(ms[n] == q_factorial(n) for n in range(9))


def test_parse_param_file_and_assignments():
    text = "# perfect matchings\nh, s, t, u = 0\nc = q  # crossings\n"
    pa = parse_param_file(text)
    assert pa["h"] == 0 and pa["u"] == 0 and pa["c"] == parse_poly("q")
    assert pa["a"] == Poly.var("a")
    assert parse_assignments(["ell=2"]) == {"l": Poly.const(2)}
    with pytest.raises(ValueError):
        parse_assignments(["zz=1"])
    with pytest.raises(ValueError):
        parse_assignments(["a"])


def test_param_assignment_validation():
    with pytest.raises(ValueError):
        ParamAssignment({"zz": 1})
    with pytest.raises(ValueError):
        ParamAssignment({}, color_weights=[])
    pa = ParamAssignment.with_colors(2)
    assert pa["u"] == parse_poly("u1 + u2")


def test_z_factor():
    base = moments(ParamAssignment.constant(1), 4)
    scaled = moments(ParamAssignment.constant(1), 4, z_factor=3)
    assert scaled == [m * 3 ** i for i, m in enumerate(base)]


rational = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(st.fixed_dictionaries({n: rational for n in PARAMETERS}))
def test_specialization_consistency(values):
    symbolic = moments(ParamAssignment.symbolic(), 5)
    direct = moments(ParamAssignment(values), 5)
    for s, d in zip(symbolic, direct):
        assert Fraction(s.evaluate(values)) == Fraction(d)
