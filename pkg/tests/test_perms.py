from collections import Counter

import pytest
from hypothesis import given, strategies as st

from permfrac.perms import (PatternSpec, Permutation, StepClass, all_permutations, contains,
                            count_avoiders, double_descents, fondamentale, fondamentale_inverse,
                            index_profile, index_profiles, maximal_chains, occurrences,
                            parse_permutation, stats, word_stats)

FIGURE = parse_permutation("597126843")


def perms_up_to(n):
    return st.integers(0, n).flatmap(lambda m: st.permutations(list(range(1, m + 1)))).map(
        lambda w: Permutation(tuple(w)))


def test_identity_stats():
    st_ = stats(Permutation.identity(5))
    assert st_.fp == 5 and all(v == 0 for k, v in st_.as_dict().items() if k != "fp")


def test_figure_stats():
    assert stats(FIGURE).as_dict() == dict(exc=4, fp=1, aexc=4, le=1, lae=1, ie=2, ile=1,
                                           nie=2, nile=0, iae=1, ilae=0, niae=4, nilae=2,
                                           iefp=2)


def test_transposition_stats():
    d = stats(parse_permutation("21")).as_dict()
    assert d["exc"] == 1 and d["aexc"] == 1
    assert sum(d.values()) == 2


def test_index_profiles_of_figure():
    p7 = index_profile(FIGURE, 7)
    assert (p7.cls, p7.inve, p7.ninve, p7.prex) == (StepClass.LINKED_EXC, 1, 0, 1)
    p6 = index_profile(FIGURE, 6)
    assert (p6.cls, p6.iefp_i, p6.prex) == (StepClass.FIXED_POINT, 2, 2)
    with pytest.raises(IndexError):
        index_profile(FIGURE, 10)


def test_identity_profiles():
    for p in index_profiles(Permutation.identity(4)):
        assert p.cls == StepClass.FIXED_POINT and p.iefp_i == 0 and p.prex == 0


def test_maximal_chains():
    assert maximal_chains(Permutation.identity(4)) == []
    assert maximal_chains(parse_permutation("21")) == [[1], [2]]
    chains = maximal_chains(FIGURE)
    assert sorted(map(tuple, chains[:3])) == [(1,), (2,), (3, 7)]
    assert sorted(map(tuple, chains[3:])) == [(5,), (8, 4), (9,)]


def test_fondamentale_example():
    assert fondamentale(parse_permutation("264135")) == parse_permutation("413652")


def test_fondamentale_double_descents_to_linked_excedances():
    for sigma in all_permutations(6):
        assert double_descents(sigma) == stats(fondamentale(sigma)).le


def test_fondamentale_bijection_and_descents():
    for n in range(7):
        images = set()
        for sigma in all_permutations(n):
            tau = fondamentale(sigma)
            images.add(tau)
            assert fondamentale_inverse(tau) == sigma
            assert word_stats(sigma)[1] == stats(tau).exc
        assert len(images) == len(list(all_permutations(n)))


def test_vincular_occurrence_example():
    sigma = parse_permutation("356214")
    pat = PatternSpec.parse("31-2")
    assert pat.kind == "vincular"
    assert contains(sigma, pat)
    # the only occurrence is the subword 624; 524 fails because 5 and 2 are not adjacent
    assert occurrences(sigma, pat) == 1
    assert occurrences(parse_permutation("3 1 2"), pat) == 1
    assert occurrences(parse_permutation("3 2 1 4"), PatternSpec.parse("31-2")) == 0


def test_consecutive_occurrences():
    c321 = PatternSpec.consecutive("321")
    assert occurrences(parse_permutation("321"), c321) == 1
    assert occurrences(parse_permutation("123"), c321) == 0


def test_des_occ321_on_s3():
    counts = Counter((word_stats(s)[1], occurrences(s, PatternSpec.consecutive("321")))
                     for s in all_permutations(3))
    assert counts == Counter({(0, 0): 1, (1, 0): 4, (2, 1): 1})


def test_word_stats_examples():
    assert word_stats((2, 1)) == (1, 1, 1, 1)
    assert word_stats((-3, -1, 1, 2)) == (0, 0, 0, 0)


def test_des_exc_equidistributed_s4():
    des = Counter(word_stats(s)[1] for s in all_permutations(4))
    exc = Counter(stats(s).exc for s in all_permutations(4))
    assert des == exc == Counter({0: 1, 1: 11, 2: 11, 3: 1})


def test_classical_avoiders_are_catalan():
    assert [count_avoiders(n, PatternSpec.classical("132")) for n in range(8)] == \
        [1, 1, 2, 5, 14, 42, 132, 429]


def test_pattern_validation():
    with pytest.raises(ValueError):
        PatternSpec.parse("1234")
    with pytest.raises(ValueError):
        PatternSpec.parse("112")


def test_parse_permutation_formats():
    assert parse_permutation("3, 1, 2") == parse_permutation("312")
    assert parse_permutation("10 1 2 3 4 5 6 7 8 9").n == 10
    with pytest.raises(ValueError):
        parse_permutation("1123")
    with pytest.raises(ValueError):
        parse_permutation("1 3")


def test_no_linked_no_fixed_points_are_euler_numbers():
    expected = {0: 1, 2: 1, 4: 5, 6: 61, 8: 1385}
    for n in range(9):
        count = 0
        for sigma in all_permutations(n):
            s = stats(sigma)
            if s.fp == 0 and s.le == 0 and s.lae == 0:
                count += 1
        assert count == expected.get(n, 0)


@given(perms_up_to(8))
def test_stat_vector_invariants(sigma):
    s = stats(sigma)
    assert s.exc + s.fp + s.aexc == sigma.n
    assert s.le <= s.exc and s.lae <= s.aexc
    assert s.ile <= s.ie and s.nile <= s.nie and s.ilae <= s.iae and s.nilae <= s.niae
    assert s.exc - s.le == s.aexc - s.lae


@given(perms_up_to(8))
def test_vectorized_sums(sigma):
    s = stats(sigma)
    profs = index_profiles(sigma)
    exc = [p for p in profs if p.cls in (StepClass.LINKED_EXC, StepClass.NON_LINKED_EXC)]
    aexc = [p for p in profs if p.cls in (StepClass.LINKED_AEXC, StepClass.NON_LINKED_AEXC)]
    assert sum(p.inve for p in exc) == s.ie
    assert sum(p.ninve for p in exc) == s.nie
    assert sum(p.inve for p in exc if p.cls == StepClass.LINKED_EXC) == s.ile
    assert sum(p.ninve for p in exc if p.cls == StepClass.LINKED_EXC) == s.nile
    assert sum(p.inva for p in aexc) == s.iae
    assert sum(p.ninva for p in aexc) == s.niae
    assert sum(p.inva for p in aexc if p.cls == StepClass.LINKED_AEXC) == s.ilae
    assert sum(p.ninva for p in aexc if p.cls == StepClass.LINKED_AEXC) == s.nilae
    assert sum(p.iefp_i for p in profs if p.cls == StepClass.FIXED_POINT) == s.iefp
    for p in exc:
        assert p.inve + p.ninve == p.prex
    for p in aexc:
        assert p.inva + p.ninva == p.fola


@given(perms_up_to(8))
def test_prefix_balance_of_non_linked(sigma):
    up = down = 0
    for p in index_profiles(sigma):
        up += p.cls == StepClass.NON_LINKED_EXC
        down += p.cls == StepClass.NON_LINKED_AEXC
        assert up >= down
    assert up == down


@given(perms_up_to(8))
def test_chains_partition_excedances(sigma):
    chains = maximal_chains(sigma)
    w = sigma.word
    exc = sorted(i for i in range(1, sigma.n + 1) if w[i - 1] > i)
    aexc = sorted(i for i in range(1, sigma.n + 1) if w[i - 1] < i)
    members = sorted(i for c in chains for i in c)
    assert members == sorted(exc + aexc)
    for c in chains:
        for a, b in zip(c, c[1:]):
            assert w[a - 1] == b
