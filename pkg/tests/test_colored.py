from collections import Counter

import pytest
from hypothesis import given, strategies as st

from permfrac.cfrac import moments
from permfrac.colored import (ColoredPermutation, check_des_exc_equidistribution,
                              colored_stats, distribution, enumerate_colored, exc_fix_params,
                              parse_colored, verify_colored_corollaries)
from permfrac.perms import Permutation, all_permutations, inversions, stats, word_stats
from permfrac.poly import parse_poly


def test_single_colored_letter():
    P = parse_colored("1 | 1", k=2)
    st_ = colored_stats(P)
    assert (st_.exc, st_.fix, st_.inv, st_.des) == (1, 0, 1, 1)


def test_text_format():
    P = parse_colored("3 1 2 | 0 2 1")
    assert P.k == 3 and str(P) == "3 1 2 | 0 2 1"
    with pytest.raises(ValueError):
        parse_colored("3 1 2")
    with pytest.raises(ValueError):
        ColoredPermutation(Permutation((1, 2)), (0, 3), 3)
    with pytest.raises(ValueError):
        ColoredPermutation(Permutation((1, 2)), (0,), 2)


def test_enumeration_sizes():
    assert len(list(enumerate_colored(2, 1))) == 2
    assert len(list(enumerate_colored(2, 2))) == 8
    assert len(list(enumerate_colored(3, 3))) == 162
    with pytest.raises(ValueError):
        next(enumerate_colored(8, 4, bound=1000))


def test_exc_fix_law_small():
    ms = moments(exc_fix_params(2), 2)
    assert ms[1] == parse_poly("x + q")
    oracle = distribution(enumerate_colored(2, 2), lambda P: {
        "x": colored_stats(P).exc, "y": colored_stats(P).aexc, "q": colored_stats(P).fix})
    assert ms[2] == oracle


def test_k1_reduces_to_classical_exc_aexc_fix():
    ms = moments(exc_fix_params(1), 7)
    for n in range(8):
        oracle = distribution(all_permutations(n), lambda s: {
            "x": stats(s).exc, "y": stats(s).aexc, "q": stats(s).fp})
        assert ms[n] == oracle


def test_corollaries_exhaustive():
    rep = verify_colored_corollaries(n_max=5, k_max=3)
    assert rep.ok, rep.to_text()


def test_des_exc_equidistribution():
    assert check_des_exc_equidistribution(5, 3).ok


@given(st.integers(0, 6).flatmap(lambda m: st.permutations(list(range(1, m + 1)))))
def test_uncolored_matches_classical(word):
    pi = Permutation(tuple(word))
    P = ColoredPermutation(pi, (0,) * pi.n, 1)
    st_ = colored_stats(P)
    s = stats(pi)
    assert (st_.exc, st_.aexc, st_.fix) == (s.exc, s.aexc, s.fp)
    assert st_.inv == inversions(pi.word)
    assert st_.des == word_stats(pi.word)[1]


@given(st.integers(1, 5).flatmap(
    lambda m: st.tuples(st.permutations(list(range(1, m + 1))),
                        st.lists(st.integers(0, 2), min_size=m, max_size=m))))
def test_statistic_ranges(data):
    word, colors = data
    P = ColoredPermutation(Permutation(tuple(word)), tuple(colors), 3)
    st_ = colored_stats(P)
    assert st_.exc + st_.aexc + st_.fix == P.n
    assert 0 <= st_.des <= P.n
