"""k-arrangements: permutations whose fixed points carry one of k colors.

Covers counting (four independent methods), enumeration, the derangement and
permutation forms, the color-encoding, pattern avoidance on permutation forms,
the refined generating function with u -> u1 + ... + uk, and bounded checks of
the open conjectures.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .cfrac import PARAMETERS, ParamAssignment, moments
from .colored import ColoredPermutation, colored_stats
from .perms import PatternSpec, Permutation, all_permutations, stats, word_stats
from .poly import Poly, Ring, TruncatedSeries, series_mul
from .report import Report

__all__ = [
    "KArrangement",
    "ArrangementForm",
    "FormError",
    "COUNT_METHODS",
    "count",
    "count_all_methods",
    "enumerate_arrangements",
    "to_form",
    "from_form",
    "parse_form",
    "color_encoding",
    "refined_gf_check",
    "permutation_form_words",
    "avoiders",
    "catalan",
    "ballot",
    "des_triangle_formula",
    "peaks_triangle",
    "conjecture_checks",
    "proved_equidistributions",
    "rearrangement_closure",
    "DEFAULT_ARRANGEMENT_BOUND",
]

DEFAULT_ARRANGEMENT_BOUND = 2_000_000
COUNT_METHODS = ("recursion", "egf", "permanent", "binomial")


class FormError(ValueError):
    """A word is not a valid derangement or permutation form."""


@dataclass(frozen=True)
class KArrangement:
    """A permutation ``pi`` with a color in 1..k on each fixed point (``coloring``)."""

    pi: Permutation
    coloring: Tuple[Tuple[int, int], ...]
    k: int

    def __post_init__(self):
        col = tuple(sorted(dict(self.coloring).items()))
        object.__setattr__(self, "coloring", col)
        if self.k < 0:
            raise ValueError("k must be nonnegative for actual arrangements")
        fixed = [i for i, a in enumerate(self.pi.word, 1) if a == i]
        if [i for i, _ in col] != fixed:
            raise ValueError("the coloring must be defined exactly on the fixed points")
        if any(not 1 <= c <= self.k for _, c in col):
            raise ValueError(f"colors must lie in 1..{self.k}")

    @classmethod
    def make(cls, pi, coloring: Mapping[int, int], k: int) -> "KArrangement":
        if not isinstance(pi, Permutation):
            pi = Permutation(tuple(pi))
        return cls(pi, tuple(coloring.items()), k)

    @property
    def n(self) -> int:
        return self.pi.n

    @property
    def phi(self) -> Dict[int, int]:
        return dict(self.coloring)

    def __str__(self):
        col = ", ".join(f"{i}->{c}" for i, c in self.coloring)
        return f"{self.pi} {{{col}}}"


@dataclass(frozen=True)
class ArrangementForm:
    word: Tuple[int, ...]
    kind: str  # "derangement" | "permutation"
    k: int

    def __str__(self):
        return " ".join(map(str, self.word))


# counting -----------------------------------------------------------------------

def _count_recursion(k: int, n: int) -> int:
    a = 1
    for m in range(1, n + 1):
        a = m * a + (k - 1) ** m
    return a


def _count_egf(k: int, n: int) -> int:
    exp_part = TruncatedSeries([Fraction((k - 1) ** j, factorial(j)) for j in range(n + 1)], n)
    geometric = TruncatedSeries([1] * (n + 1), n)
    coeff = series_mul(exp_part, geometric)[n].constant()
    value = Fraction(coeff) * factorial(n)
    assert value.denominator == 1
    return value.numerator


def _permanent(matrix: Sequence[Sequence[int]]) -> int:
    """Ryser's inclusion-exclusion formula."""
    n = len(matrix)
    if n == 0:
        return 1
    total = 0
    for size in range(1, n + 1):
        for cols in combinations(range(n), size):
            prod = 1
            for row in matrix:
                prod *= sum(row[j] for j in cols)
                if prod == 0:
                    break
            total += (-1) ** size * prod
    return (-1) ** n * total


def _count_permanent(k: int, n: int) -> int:
    return _permanent([[k if i == j else 1 for j in range(n)] for i in range(n)])


def _count_binomial(k: int, n: int) -> int:
    seq = [factorial(i) for i in range(n + 1)]  # A_1
    level = 1
    while level < k:
        seq = [sum(comb(m, i) * seq[i] for i in range(m + 1)) for m in range(n + 1)]
        level += 1
    while level > k:
        seq = [sum((-1) ** (m - i) * comb(m, i) * seq[i] for i in range(m + 1))
               for m in range(n + 1)]
        level -= 1
    return seq[n]


_COUNTERS = {"recursion": _count_recursion, "egf": _count_egf,
             "permanent": _count_permanent, "binomial": _count_binomial}


def count(k: int, n: int, method: str = "recursion", max_n: int = 200) -> int:
    """A_k(n), the number of k-arrangements of [n] (formally also for k < 0)."""
    if method not in _COUNTERS:
        raise ValueError(f"unknown method {method!r}; choose from {COUNT_METHODS}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    limit = 12 if method == "permanent" else max_n
    if n > limit:
        raise ValueError(f"n={n} exceeds the bound {limit} for method {method}")
    return _COUNTERS[method](k, n)


def count_all_methods(k: int, n: int) -> Dict[str, int]:
    return {m: count(k, n, m) for m in COUNT_METHODS}


# enumeration and forms -------------------------------------------------------------

def enumerate_arrangements(k: int, n: int, bound: int = DEFAULT_ARRANGEMENT_BOUND
                           ) -> Iterator[KArrangement]:
    if k < 0:
        raise ValueError("no arrangements are defined for negative k")
    if count(k, n) > bound:
        raise ValueError(f"A_{k}({n}) = {count(k, n)} exceeds the bound {bound}")
    for pi in all_permutations(n):
        fixed = [i for i, a in enumerate(pi.word, 1) if a == i]
        if k == 0 and fixed:
            continue
        for colors in product(range(1, k + 1), repeat=len(fixed)):
            yield KArrangement(pi, tuple(zip(fixed, colors)), k)


def to_form(arr: KArrangement, kind: str = "derangement") -> ArrangementForm:
    """Colored fixed points become negative letters; the other letters are
    renumbered 1, 2, ... in increasing order of value.  The permutation form
    keeps fixed points of color k as positive letters."""
    if kind not in ("derangement", "permutation"):
        raise ValueError("kind must be 'derangement' or 'permutation'")
    phi = arr.phi
    word: List[Optional[int]] = []
    kept: List[int] = []
    for i, a in enumerate(arr.pi.word, 1):
        if i in phi and not (kind == "permutation" and phi[i] == arr.k):
            word.append(-phi[i])
        else:
            word.append(None)
            kept.append(a)
    rank = {v: j for j, v in enumerate(sorted(kept), 1)}
    it = iter(kept)
    out = tuple(rank[next(it)] if x is None else x for x in word)
    return ArrangementForm(out, kind, arr.k)


def from_form(form: ArrangementForm) -> KArrangement:
    """Inverse of :func:`to_form`; raises FormError on malformed words."""
    word, k, kind = tuple(form.word), form.k, form.kind
    if kind not in ("derangement", "permutation"):
        raise FormError("kind must be 'derangement' or 'permutation'")
    n = len(word)
    lowest = -k if kind == "derangement" else -k + 1
    negatives = [i for i, x in enumerate(word, 1) if x < 0]
    positives = [x for x in word if x > 0]
    if any(x == 0 for x in word):
        raise FormError("0 is not a letter of any form")
    if any(x < lowest for x in word):
        raise FormError(f"negative letters must be at least {lowest}")
    if sorted(positives) != list(range(1, len(positives) + 1)):
        raise FormError("positive letters must be 1..n-K once each")
    fixed = set(negatives)
    rest = [i for i in range(1, n + 1) if i not in fixed]
    pi = [0] * (n + 1)
    coloring = {i: -word[i - 1] for i in negatives}
    for pos, letter in zip(rest, positives):
        pi[pos] = rest[letter - 1]
    for i in negatives:
        pi[i] = i
    for j, (pos, letter) in enumerate(zip(rest, positives), 1):
        if letter == j:
            if kind == "derangement":
                raise FormError("the positive letters must form a derangement")
            coloring[pos] = k
    return KArrangement(Permutation(tuple(pi[1:])), tuple(coloring.items()), k)


def parse_form(text: str, kind: str, k: int) -> ArrangementForm:
    try:
        word = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise FormError(f"cannot parse form {text!r}") from None
    form = ArrangementForm(word, kind, k)
    from_form(form)
    return form


def color_encoding(arr: KArrangement) -> ColoredPermutation:
    """Colored permutation with c_i = phi(i) on fixed points and 0 elsewhere.

    Colors then range over 0..k, so the result lives among (k+1)-colored permutations.
    """
    phi = arr.phi
    return ColoredPermutation(arr.pi, tuple(phi.get(i, 0) for i in range(1, arr.n + 1)),
                              arr.k + 1)


# refined generating function ---------------------------------------------------

def _arrangement_sum(k: int, n: int) -> Poly:
    ring = Ring(tuple(PARAMETERS) + tuple(f"u{i}" for i in range(1, k + 1)))
    width = len(PARAMETERS)
    counts: Counter = Counter()
    cache: Dict[Permutation, Tuple[int, ...]] = {}
    for arr in enumerate_arrangements(k, n):
        base = cache.get(arr.pi)
        if base is None:
            st = stats(arr.pi)
            base = cache[arr.pi] = (
                st.ile, st.nile, st.ie - st.ile, st.nie - st.nile, st.ilae, st.nilae,
                st.iae - st.ilae, st.niae - st.nilae, st.exc - st.le, st.aexc - st.lae,
                st.le, st.lae, 0, st.iefp)
        colors = [0] * k
        for _, c in arr.coloring:
            colors[c - 1] += 1
        counts[base + tuple(colors)] += 1
    assert len(ring.names) == width + k
    order = [ring.index[nm] for nm in tuple(PARAMETERS) + tuple(f"u{i}" for i in range(1, k + 1))]
    terms = {}
    for exps, c in counts.items():
        vec = [0] * len(ring.names)
        for pos, e in zip(order, exps):
            vec[pos] = e
        terms[ring.encode(vec)] = c
    return Poly._raw(terms, ring)


def refined_gf_check(k: int, n_max: int) -> Report:
    """C(z) with u -> u1+...+uk against the colored sum over k-arrangements."""
    rep = Report(f"refined generating function, k = {k}, n <= {n_max}")
    ms = moments(ParamAssignment.with_colors(k), n_max)
    for n in range(n_max + 1):
        oracle = _arrangement_sum(k, n)
        rep.add(f"k={k}, n={n}", ms[n] == oracle, None if ms[n] == oracle else oracle,
                None if ms[n] == oracle else ms[n])
    return rep


# pattern avoidance on permutation forms ------------------------------------------------

def _completes(prefix: Sequence[int], x: int, letters: Sequence[int]) -> bool:
    """Does appending x to prefix create a classical occurrence ending at x?"""
    r1, r2, r3 = letters
    m = len(prefix)
    for i in range(m):
        a = prefix[i]
        for j in range(i + 1, m):
            b = prefix[j]
            vals = (a, b, x)
            if len(set(vals)) < 3:
                continue
            order = sorted(vals)
            if (order.index(a) + 1, order.index(b) + 1, order.index(x) + 1) == (r1, r2, r3):
                return True
    return False


def permutation_form_words(k: int, n: int, pattern: Optional[PatternSpec] = None
                           ) -> Iterator[Tuple[int, ...]]:
    """All permutation-form words of k-arrangements of [n], optionally avoiding a
    classical length-3 pattern (pruned depth-first search)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if pattern is not None and pattern.kind != "classical":
        raise ValueError("avoidance on arrangements is defined for classical patterns only")
    letters = tuple(pattern.letters) if pattern is not None else None
    neg_letters = list(range(-(k - 1), 0)) if k >= 2 else []
    for K in range(n + 1):
        if K and not neg_letters:
            break
        for negs in _multisets(neg_letters, K):
            pool = Counter(negs)
            pool.update(range(1, n - K + 1))
            yield from _words(pool, n, letters)


def _multisets(items: Sequence[int], size: int) -> Iterator[Tuple[int, ...]]:
    if size == 0:
        yield ()
        return
    from itertools import combinations_with_replacement
    yield from combinations_with_replacement(items, size)


def _words(pool: Counter, n: int, letters) -> Iterator[Tuple[int, ...]]:
    word: List[int] = []

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        for x in sorted(pool):
            if pool[x] == 0:
                continue
            if letters is not None and _completes(word, x, letters):
                continue
            pool[x] -= 1
            word.append(x)
            yield from rec()
            word.pop()
            pool[x] += 1

    yield from rec()


def avoiders(k: int, n: int, pattern, refine_by_negatives: bool = False):
    """Number of permutation-form words avoiding ``pattern``; with the flag, a
    histogram {number of negative letters: count}."""
    if isinstance(pattern, str):
        pattern = PatternSpec.parse(pattern, "classical")
    if len(pattern.letters) != 3:
        raise ValueError("only length-3 patterns are supported")
    if not refine_by_negatives:
        return sum(1 for _ in permutation_form_words(k, n, pattern))
    hist: Counter = Counter()
    for w in permutation_form_words(k, n, pattern):
        hist[sum(1 for x in w if x < 0)] += 1
    return dict(sorted(hist.items()))


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def ballot(n: int, j: int) -> int:
    value = Fraction(j + 1, n + 1) * comb(2 * n - j, n)
    assert value.denominator == 1
    return value.numerator


def des_triangle_formula(n: int, k: int) -> int:
    """(2/(n+1)) C(n+1, k+2) C(n-2, k), for n >= 2."""
    value = Fraction(2, n + 1) * comb(n + 1, k + 2) * comb(n - 2, k)
    assert value.denominator == 1
    return value.numerator


def peaks_triangle(m: int) -> Dict[int, int]:
    """123-avoiding permutations of [m] by number of peaks (brute force from the definition)."""
    pat = PatternSpec.classical("123")
    hist: Counter = Counter()
    from .perms import contains
    for pi in all_permutations(m):
        if contains(pi, pat):
            continue
        w = pi.word
        hist[sum(1 for i in range(1, m - 1) if w[i - 1] < w[i] > w[i + 1])] += 1
    return dict(sorted(hist.items()))


# conjectures and proved statements --------------------------------------------------

def _dist(values) -> Dict[int, int]:
    return dict(sorted(Counter(values).items()))


def _colored_maj(P: ColoredPermutation) -> int:
    keys = P.pairs()
    return sum(i for i in range(1, P.n + 1) if keys[i - 1] > keys[i])


def _verdict(rep: Report, label: str, ok: bool, expected, actual) -> None:
    rep.add(label, ok, expected, actual,
            note="verified up to bound" if ok else "counterexample found")


def _ascents(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w) - 1) if w[i] < w[i + 1])


def conjecture_checks(n_max: int = 6, k_max: int = 3, reference: Optional[Dict] = None,
                      variants: bool = True) -> Report:
    """Bounded exhaustive checks of the k-arrangement conjectures.

    ``reference`` maps "peaks" to the bundled triangle rows {m: {k: count}}; when
    absent, the rows are regenerated from their definition.  ``variants`` adds
    checks of the last conjecture under two alternative readings.
    """
    rep = Report(f"k-arrangement conjectures, n <= {n_max}, k <= {k_max}")
    all_patterns = ["123", "132", "213", "231", "312", "321"]
    for k in range(0, k_max + 1):
        for n in range(n_max + 1):
            arrs = list(enumerate_arrangements(k, n))
            d_der = _dist(word_stats(to_form(a, "derangement").word)[1] for a in arrs)
            d_perm = _dist(word_stats(to_form(a, "permutation").word)[1] for a in arrs)
            _verdict(rep, f"C1 des(derangement form) ~ des(permutation form), k={k}, n={n}",
                     d_der == d_perm, d_der, d_perm)
    for n in range(n_max + 1):
        expected = catalan(n + 2) - 2 ** n
        for pat in all_patterns:
            got = avoiders(3, n, pat)
            _verdict(rep, f"C2 3-arrangements avoiding {pat}, n={n}", got == expected,
                     expected, got)
    for m in range(1, n_max + 1):
        n = m + 1
        expected = {j: des_triangle_formula(n, j) for j in range(0, n - 1)}
        expected = {j: v for j, v in expected.items() if v}
        for pat in ["132", "213", "231", "312"]:
            got = _dist(word_stats(w)[1] for w in
                        permutation_form_words(2, m, PatternSpec.classical(pat)))
            _verdict(rep, f"C3 des on 2-arrangements of [{m}] avoiding {pat}", got == expected,
                     expected, got)
    rows = (reference or {}).get("peaks")
    for m in range(0, n_max + 1):
        expected = rows[m] if rows and m in rows else peaks_triangle(m + 1)
        got = _dist(_ascents(w) for w in
                    permutation_form_words(2, m, PatternSpec.classical("123")))
        _verdict(rep, f"C4 ascents on 2-arrangements of [{m}] avoiding 123", got == expected,
                 expected, got)
    for k in range(0, k_max + 1):
        for n in range(n_max + 1):
            arrs = list(enumerate_arrangements(k, n))
            enc = [color_encoding(a) for a in arrs]
            d_inv = _dist(colored_stats(P).inv for P in enc)
            d_maj = _dist(_colored_maj(P) for P in enc)
            _verdict(rep, f"C5 inv ~ maj on color-encodings, k={k}, n={n}", d_inv == d_maj,
                     d_inv, d_maj)
            d_des = _dist(colored_stats(P).des for P in enc)
            for kind in ("permutation", "derangement"):
                d_form = _dist(word_stats(to_form(a, kind).word)[1] for a in arrs)
                _verdict(rep, f"C5 des(color-encoding) ~ des({kind} form), k={k}, n={n}",
                         d_des == d_form, d_des, d_form)
    if variants:
        _c5_variants(rep, n_max, k_max)
    return rep


def _c5_variants(rep: Report, n_max: int, k_max: int) -> None:
    """Two alternative readings under which the C5 statements do hold at desk scale."""
    for k in range(1, k_max + 1):
        for n in range(n_max + 1):
            arrs = list(enumerate_arrangements(k, n))
            # color k identified with 0, so the encoding uses only k colors
            reduced = [ColoredPermutation(a.pi, tuple(a.phi.get(i, 0) % k
                                                      for i in range(1, n + 1)), k)
                       for a in arrs]
            d_inv = _dist(colored_stats(P).inv for P in reduced)
            d_maj = _dist(_colored_maj(P) for P in reduced)
            rep.add(f"C5-variant inv ~ maj with color k read as 0, k={k}, n={n}",
                    d_inv == d_maj, d_inv, d_maj, note="alternative reading")
            # descents only at positions i < n (no comparison with the sentinel)
            d_des = _dist(_inner_descents(color_encoding(a)) for a in arrs)
            d_form = _dist(word_stats(to_form(a, "permutation").word)[1] for a in arrs)
            rep.add(f"C5-variant des without position n ~ des(permutation form), k={k}, n={n}",
                    d_des == d_form, d_des, d_form, note="alternative reading")


def _inner_descents(P: ColoredPermutation) -> int:
    keys = P.pairs()
    return sum(1 for i in range(P.n - 1) if keys[i] > keys[i + 1])


def proved_equidistributions(n_max: int = 6, k_max: int = 3, k_min: int = 1) -> Report:
    """exc ~ des and inv ~ maj on permutation forms.

    For k = 0 the permutation forms are the derangements, which are not a union
    of rearrangement classes, and the statement fails (e.g. n = 3).
    """
    rep = Report(f"exc/des and inv/maj on permutation forms, n <= {n_max}, "
                 f"{k_min} <= k <= {k_max}")
    for k in range(k_min, k_max + 1):
        for n in range(n_max + 1):
            ws = [word_stats(to_form(a, "permutation").word)
                  for a in enumerate_arrangements(k, n)]
            rep.add(f"exc ~ des, k={k}, n={n}", _dist(w[0] for w in ws) == _dist(w[1] for w in ws),
                    _dist(w[0] for w in ws), _dist(w[1] for w in ws))
            rep.add(f"inv ~ maj, k={k}, n={n}", _dist(w[3] for w in ws) == _dist(w[2] for w in ws),
                    _dist(w[3] for w in ws), _dist(w[2] for w in ws))
    return rep


def rearrangement_closure(k: int, n: int) -> bool:
    """Permutation forms are a union of rearrangement classes."""
    classes: Counter = Counter()
    for a in enumerate_arrangements(k, n):
        classes[tuple(sorted(to_form(a, "permutation").word))] += 1
    for letters, size in classes.items():
        mult = factorial(len(letters))
        for c in Counter(letters).values():
            mult //= factorial(c)
        if size != mult:
            return False
    return True
