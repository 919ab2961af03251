import json
from math import factorial

import pytest
from hypothesis import given, strategies as st

from permfrac.motzkin import (LabeledMotzkinPath, LabeledStep, PathError, check_bijection,
                              count_paths, enumerate_paths, eta, eta_inverse, weight,
                              weight_exponents)
from permfrac.perms import (Permutation, StepClass, all_permutations, index_profiles,
                            parse_permutation, stat_monomial, stats)
from permfrac.poly import Poly, parse_poly

FIGURE = parse_permutation("597126843")


def perms_up_to(n):
    return st.integers(0, n).flatmap(lambda m: st.permutations(list(range(1, m + 1)))).map(
        lambda w: Permutation(tuple(w)))


def test_figure_path():
    path = eta(FIGURE)
    assert path.kinds() == ("U", "U", "U", "T", "D", "F", "S", "D", "D")
    assert path.labels() == ["p", "dp", "cdp", "g^2t", "l^2r", "w^2u", "as", "hr", "r"]
    assert weight(path) == parse_poly("a*c*d^2*g^2*h*l^2*p^3*r^3*s*t*u*w^2")
    assert eta_inverse(path) == FIGURE


def test_identity_path():
    path = eta(Permutation.identity(4))
    assert path.kinds() == ("F",) * 4 and path.labels() == ["u"] * 4
    assert weight(path) == parse_poly("u^4")
    assert eta_inverse(LabeledMotzkinPath.from_steps([("F", 0)] * 4)) == Permutation.identity(4)


def test_transposition_path():
    path = eta(parse_permutation("21"))
    assert path.kinds() == ("U", "D") and weight(path) == parse_poly("p*r")


def test_encoding_roundtrip():
    path = eta(FIGURE)
    text = path.encode()
    assert text.startswith("U[c^0 d^0] U[c^0 d^1]")
    assert LabeledMotzkinPath.decode(text) == path
    data = json.loads(json.dumps(path.to_json()))
    assert LabeledMotzkinPath.from_json(data) == path


def test_down_step_uses_lower_endpoint():
    path = eta(FIGURE)
    heights = path.heights()
    assert heights[4:6] == [3, 2]  # step 5 descends 3 -> 2
    assert path.steps[4].start_height == 3 and path.steps[4].exponent == 0


def test_enumeration_counts():
    assert [count_paths(n) for n in range(7)] == [factorial(n) for n in range(7)]
    assert len(enumerate_paths(0)) == 1
    assert len(enumerate_paths(3)) == 6
    paths = enumerate_paths(6)
    assert len(set(paths)) == 720
    assert {eta_inverse(p) for p in paths} == set(all_permutations(6))


def test_weights_at_ones_sum_to_factorial():
    total = sum(weight(p).evaluate({v: 1 for v in weight(p).variables()})
                for p in enumerate_paths(3))
    assert total == 6


def test_enumeration_bound():
    with pytest.raises(ValueError):
        enumerate_paths(10)


def test_bijection_exhaustive_to_7():
    for n in range(8):
        assert check_bijection(n)


@pytest.mark.parametrize("text, position", [
    ("U[c^0 d^0]", None),                 # does not return to 0
    ("U[c^1 d^0] D[h^0 l^0]", 1),         # exponent beyond height
    ("D[h^0 l^0]", 1),                    # goes below the axis
    ("U[c^0 d^0] U[c^0 d^0]", 2),         # d-exponent inconsistent with height
    ("X[a^0]", 1),                        # unknown kind
])
def test_malformed_paths(text, position):
    with pytest.raises(PathError) as info:
        LabeledMotzkinPath.decode(text)
    assert info.value.position == position


def test_eta_inverse_structured_diagnostic():
    err = PathError("labels do not determine a permutation", 3)
    assert err.as_dict() == {"reason": "labels do not determine a permutation", "position": 3}


@given(perms_up_to(8))
def test_roundtrip_and_weight(sigma):
    path = eta(sigma)
    path.validate()
    assert eta_inverse(path) == sigma
    assert weight(path) == Poly.from_monomial(stat_monomial(stats(sigma)))


@given(perms_up_to(8))
def test_height_law(sigma):
    path = eta(sigma)
    for prof, step in zip(index_profiles(sigma), path.steps):
        if prof.cls == StepClass.NON_LINKED_EXC:
            assert step.start_height == prof.prex
        elif prof.cls == StepClass.NON_LINKED_AEXC:
            assert step.end_height == prof.fola
        elif prof.cls == StepClass.LINKED_EXC:
            assert step.start_height == prof.prex + 1
        elif prof.cls == StepClass.LINKED_AEXC:
            assert step.start_height == prof.fola + 1
        else:
            assert step.start_height == prof.prex


def test_weight_exponents_is_dict_of_positive_powers():
    exps = weight_exponents(eta(FIGURE))
    assert exps["p"] == 3 and exps["w"] == 2 and all(v > 0 for v in exps.values())
