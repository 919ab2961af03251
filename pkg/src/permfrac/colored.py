"""k-colored permutations, their five statistics, and the colored corollaries."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Sequence, Tuple

from .cfrac import ParamAssignment, bracket, moments
from .perms import Permutation, all_permutations, parse_permutation
from .poly import Poly, parse_poly
from .report import Report

__all__ = [
    "ColoredPermutation",
    "ColoredStats",
    "colored_stats",
    "enumerate_colored",
    "parse_colored",
    "distribution",
    "exc_fix_params",
    "inversion_params",
    "exc_inv_params",
    "q_factorial",
    "verify_colored_corollaries",
    "check_des_exc_equidistribution",
    "DEFAULT_COLORED_BOUND",
]

DEFAULT_COLORED_BOUND = 500_000


@dataclass(frozen=True)
class ColoredPermutation:
    pi: Permutation
    colors: Tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if self.k < 1:
            raise ValueError("a colored permutation needs k >= 1 colors")
        if len(self.colors) != self.pi.n:
            raise ValueError("one color per letter is required")
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError(f"colors must lie in 0..{self.k - 1}")

    @property
    def n(self) -> int:
        return self.pi.n

    def pairs(self) -> List[Tuple[int, int]]:
        """(color, letter) keys with the sentinel (0, n+1) appended; tuple order is the color order."""
        return [(c, a) for a, c in zip(self.pi.word, self.colors)] + [(0, self.n + 1)]

    def __str__(self):
        return f"{' '.join(map(str, self.pi.word))} | {' '.join(map(str, self.colors))}"


def parse_colored(text: str, k: int | None = None) -> ColoredPermutation:
    """``perm | colors``; ``k`` defaults to one more than the largest color."""
    if "|" not in text:
        raise ValueError("expected 'perm | colors'")
    left, right = text.split("|", 1)
    pi = parse_permutation(left)
    colors = tuple(int(c) for c in right.replace(",", " ").split())
    return ColoredPermutation(pi, colors, k if k is not None else max(colors, default=0) + 1)


class ColoredStats(NamedTuple):
    des: int
    exc: int
    aexc: int
    inv: int
    fix: int


def colored_stats(P: ColoredPermutation) -> ColoredStats:
    keys = P.pairs()
    n = P.n
    des = sum(1 for i in range(n) if keys[i] > keys[i + 1])
    inv = sum(1 for i in range(n) for j in range(i + 1, n + 1) if keys[i] > keys[j])
    exc = aexc = fix = 0
    for i, (a, c) in enumerate(zip(P.pi.word, P.colors), 1):
        if a > i or (a == i and c > 0):
            exc += 1
        elif a < i:
            aexc += 1
        else:
            fix += 1
    return ColoredStats(des, exc, aexc, inv, fix)


def enumerate_colored(n: int, k: int, bound: int = DEFAULT_COLORED_BOUND
                      ) -> Iterator[ColoredPermutation]:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k ** n * factorial(n) > bound:
        raise ValueError(f"{k}^{n}*{n}! colored permutations exceed the bound {bound}")
    for pi in all_permutations(n):
        for colors in product(range(k), repeat=n):
            yield ColoredPermutation(pi, colors, k)


def distribution(objects: Iterable, statistic: Callable[[object], Mapping[str, int]]) -> Poly:
    """Sum of the monomials ``statistic(obj)`` over ``objects``."""
    counts: Counter = Counter()
    for obj in objects:
        counts[tuple(sorted((v, e) for v, e in statistic(obj).items() if e))] += 1
    total = Poly.const(0)
    for exps, c in counts.items():
        total = total + Poly.from_monomial(dict(exps), c)
    return total


def exc_fix_params(k: int) -> ParamAssignment:
    kx, ky = parse_poly(f"{k}*x"), parse_poly(f"{k}*y")
    return ParamAssignment.constant(1, s=kx, p=kx, t=ky, r=ky, u=parse_poly(f"{k - 1}*x + q"))


def inversion_params() -> ParamAssignment:
    q, q2 = parse_poly("q"), parse_poly("q^2")
    return ParamAssignment.of({"a": q, "c": q, "h": q, "r": q, "b": q2, "f": q2, "d": q2,
                               "l": q2, "t": q2, "g": 0, "w": 0, "p": 1, "u": 1,
                               "s": parse_poly("2*q")})


def exc_inv_params() -> ParamAssignment:
    return inversion_params().replace(p=parse_poly("x"), s=parse_poly("(1 + x)*q"))


def q_factorial(n: int) -> Poly:
    out = Poly.const(1)
    for i in range(1, n + 1):
        out = out * bracket(i, "q", 1)
    return out


def _exc_fix_mono(P):
    st = colored_stats(P)
    return {"x": st.exc, "y": st.aexc, "q": st.fix}


def _inv_mono(P):
    return {"q": colored_stats(P).inv}


def verify_colored_corollaries(n_max: int = 5, k_max: int = 3, inv_k1_n_max: int = 8,
                               exc_inv_n_max: int = 7) -> Report:
    """The three colored-permutation specializations against brute force."""
    rep = Report(f"colored permutations, n <= {n_max}, k <= {k_max}")
    for k in range(1, k_max + 1):
        ms = moments(exc_fix_params(k), n_max)
        for n in range(n_max + 1):
            oracle = distribution(enumerate_colored(n, k), _exc_fix_mono)
            rep.add(f"exc/aexc/fix law, k={k}, n={n}", ms[n] == oracle, oracle, ms[n])
    for k in range(1, k_max + 1):
        ms = moments(inversion_params(), n_max, z_factor=parse_poly(f"{k - 1}*q + 1"))
        for n in range(n_max + 1):
            oracle = distribution(enumerate_colored(n, k), _inv_mono)
            rep.add(f"inversion law, k={k}, n={n}", ms[n] == oracle, oracle, ms[n])
    ms = moments(inversion_params(), inv_k1_n_max)
    for n in range(inv_k1_n_max + 1):
        rep.add(f"inversion law k=1 equals [n]_q!, n={n}", ms[n] == q_factorial(n),
                q_factorial(n), ms[n])
    ms = moments(exc_inv_params(), exc_inv_n_max)
    for n in range(exc_inv_n_max + 1):
        oracle = distribution(all_permutations(n),
                              lambda pi: {"x": sum(1 for i, a in enumerate(pi.word, 1) if a > i),
                                          "q": _perm_inv(pi.word)})
        rep.add(f"exc/inv law, k=1, n={n}", ms[n] == oracle, oracle, ms[n])
    return rep


def _perm_inv(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def check_des_exc_equidistribution(n_max: int = 5, k_max: int = 3) -> Report:
    rep = Report("des and exc equidistributed on colored permutations")
    for k in range(1, k_max + 1):
        for n in range(n_max + 1):
            des = Counter()
            exc = Counter()
            for P in enumerate_colored(n, k):
                st = colored_stats(P)
                des[st.des] += 1
                exc[st.exc] += 1
            rep.add(f"k={k}, n={n}", des == exc, dict(sorted(des.items())),
                    dict(sorted(exc.items())))
    return rep
