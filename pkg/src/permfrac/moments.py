"""Hankel determinants, moment-sequence classification and orthogonal polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .cfrac import (DEFAULT_NUMERIC_BOUND, JacobiCoefficients, ParamAssignment, bracket_factorial,
                    moments)
from .poly import Poly, as_poly
from .report import Report

__all__ = [
    "hankel_matrix",
    "determinant",
    "hankel_det",
    "hankel_transform",
    "hankel_closed_form",
    "hankel_product_form",
    "MomentClassification",
    "classify",
    "OrthogonalPolySequence",
    "orthogonal_polys",
    "check_orthogonality",
    "stirling2",
    "exp_poly",
    "radoux_det",
    "radoux_closed_form",
    "jacobi_from_moments",
]

COFACTOR_LIMIT = 6


def _is_number(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _num(v):
    if isinstance(v, Poly) and v.is_constant():
        return v.constant()
    return v


def hankel_matrix(seq: Sequence, n: int) -> List[List]:
    """(m_{i+j})_{0 <= i, j <= n}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if len(seq) < 2 * n + 1:
        raise ValueError(f"a {n + 1}x{n + 1} Hankel matrix needs {2 * n + 1} entries, "
                         f"got {len(seq)}")
    return [[seq[i + j] for j in range(n + 1)] for i in range(n + 1)]


def _bareiss_numbers(m: List[List]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _cofactor(m: List[List[Poly]]) -> Poly:
    n = len(m)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: FrozenSet[int]) -> Poly:
        if row == n:
            return Poly.const(1)
        total = Poly.const(0)
        for pos, j in enumerate(sorted(cols)):
            entry = m[row][j]
            if not entry:
                continue
            term = entry * minor(row + 1, cols - {j})
            total = total - term if pos % 2 else total + term
        return total

    return minor(0, frozenset(range(n)))


def _bareiss_poly(m: List[List[Poly]]) -> Poly:
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, Poly.const(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Poly.const(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_divide(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def determinant(m: List[List]):
    """Exact determinant: Bareiss over rationals, cofactor or Bareiss over polynomials."""
    if not m:
        return 1
    entries = [[_num(x) for x in row] for row in m]
    if all(_is_number(x) for row in entries for x in row):
        d = _bareiss_numbers(entries)
        return d.numerator if d.denominator == 1 else d
    polys = [[as_poly(x) for x in row] for row in entries]
    d = _cofactor(polys) if len(polys) <= COFACTOR_LIMIT else _bareiss_poly(polys)
    return _num(d)


def hankel_det(seq: Sequence, n: int):
    return determinant(hankel_matrix(seq, n))


def hankel_transform(seq: Sequence, count: Optional[int] = None) -> List:
    """det(m_{i+j})_{0..n} for n = 0 .. count-1 (as many as the sequence allows)."""
    limit = (len(seq) - 1) // 2 + 1
    count = limit if count is None else min(count, limit)
    return [hankel_det(seq, n) for n in range(count)]


def hankel_closed_form(params: ParamAssignment, n: int):
    """(pr)^C(n+1,2) * prod_{i<=n} [i]_{c,d}! [i]_{h,l}!."""
    P = params
    out = (P["p"] * P["r"]) ** comb(n + 1, 2)
    for i in range(1, n + 1):
        out = out * bracket_factorial(i, P["c"], P["d"]) * bracket_factorial(i, P["h"], P["l"])
    return _num(out)


def hankel_product_form(params: ParamAssignment, n: int):
    """beta_1^n beta_2^(n-1) ... beta_n."""
    jc = JacobiCoefficients(params)
    out = Poly.const(1)
    for k in range(1, n + 1):
        out = out * jc.beta(k) ** (n + 1 - k)
    return _num(out)


# classification ----------------------------------------------------------------

@dataclass(frozen=True)
class MomentClassification:
    verdict: str            # MomentSequence | NotMomentSequence | Undetermined
    uniqueness: str         # Unique | Unknown
    support: str            # OneAtom | TwoAtoms | FiniteAtoms | PossiblyInfinite | Unknown
    atoms: Optional[int] = None
    reason: str = ""

    def __post_init__(self):
        if self.support in ("OneAtom", "TwoAtoms") and self.uniqueness != "Unique":
            raise ValueError("one- or two-atom support implies uniqueness")

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "uniqueness": self.uniqueness, "support": self.support}
        if self.atoms is not None:
            out["atoms"] = self.atoms
        if self.reason:
            out["reason"] = self.reason
        return out

    def __str__(self):
        sup = f"FiniteAtoms({self.atoms})" if self.support == "FiniteAtoms" else self.support
        return f"{self.verdict}, {self.uniqueness}, {sup}"


def classify(params: ParamAssignment, scan: int = 100) -> MomentClassification:
    """Decide what the sufficient conditions of the J-fraction allow us to say."""
    if not params.is_rational():
        raise ValueError("classify needs rational values for all fourteen parameters")
    v = params.rational_values()
    c, d, h, l = v["c"], v["d"], v["h"], v["l"]
    pr = v["p"] * v["r"]
    jc = JacobiCoefficients(params)
    betas = [Fraction(jc.beta(k).constant()) for k in range(1, scan + 1)]
    if pr == 0:
        return MomentClassification("MomentSequence", "Unique", "OneAtom",
                                    reason="pr = 0, every beta vanishes")
    if pr > 0 and (c == -d or h == -l):
        return MomentClassification("MomentSequence", "Unique", "TwoAtoms",
                                    reason="beta_2 = 0 with beta_1 > 0")
    if pr > 0 and ((c > -d and h > -l) or (c < -d and h < -l)):
        zero = next((k for k, b in enumerate(betas, 1) if b == 0), None)
        bounded = max(abs(c), abs(d)) * max(abs(h), abs(l)) <= 1
        if zero is not None:
            return MomentClassification("MomentSequence", "Unique", "FiniteAtoms", zero,
                                        reason=f"beta_{zero} = 0")
        return MomentClassification("MomentSequence", "Unique" if bounded else "Unknown",
                                    "PossiblyInfinite",
                                    reason="all beta_n > 0" + (
                                        "; max(|c|,|d|) max(|h|,|l|) <= 1" if bounded else ""))
    neg = next((k for k, b in enumerate(betas, 1) if b < 0), None)
    if neg is not None:
        return MomentClassification("NotMomentSequence", "Unknown", "Unknown",
                                    reason=f"beta_{neg} = {betas[neg - 1]} < 0")
    return MomentClassification("Undetermined", "Unknown", "Unknown",
                                reason=f"beta_1..beta_{scan} are nonnegative but no "
                                       "sufficient condition applies")


# orthogonal polynomials ------------------------------------------------------------

def _coeffs_sub(a: List, b: List) -> List:
    n = max(len(a), len(b))
    a = a + [Poly.const(0)] * (n - len(a))
    b = b + [Poly.const(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


@dataclass(frozen=True)
class OrthogonalPolySequence:
    """P_0..P_N as coefficient lists (constant term first) over the parameter ring."""

    coefficients: Tuple[Tuple[Poly, ...], ...]

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, n: int) -> Tuple[Poly, ...]:
        return self.coefficients[n]

    def as_poly(self, n: int, variable: str = "X") -> Poly:
        X = Poly.var(variable)
        out = Poly.const(0)
        for i, c in enumerate(self.coefficients[n]):
            out = out + c * X ** i
        return out

    def evaluate(self, values: Dict[str, object]) -> "OrthogonalPolySequence":
        return OrthogonalPolySequence(tuple(
            tuple(as_poly(c.evaluate(values)) for c in row) for row in self.coefficients))

    def format(self, variable: str = "X") -> List[str]:
        return [str(self.as_poly(n, variable)) for n in range(len(self))]


def orthogonal_polys(params: ParamAssignment, N: int,
                     bound: int = DEFAULT_NUMERIC_BOUND) -> OrthogonalPolySequence:
    """P_0 = 1, P_{n+1} = (X - alpha_n) P_n - beta_n P_{n-1}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > bound:
        raise ValueError(f"N={N} exceeds the bound {bound}")
    jc = JacobiCoefficients(params)
    zero = Poly.const(0)
    polys = [[Poly.const(1)]]
    prev: List[Poly] = []
    for n in range(N):
        cur = polys[-1]
        shifted = [zero] + cur
        nxt = _coeffs_sub(shifted, [jc.alpha(n) * c for c in cur])
        if n >= 1:
            nxt = _coeffs_sub(nxt, [jc.beta(n) * c for c in prev])
        prev = cur
        polys.append(nxt[: n + 2])
    return OrthogonalPolySequence(tuple(tuple(p) for p in polys))


def _functional(ms: Sequence, coeffs: Sequence):
    total = Poly.const(0)
    for k, c in enumerate(coeffs):
        if c:
            total = total + c * ms[k]
    return _num(total)


def _times(a: Sequence[Poly], b: Sequence[Poly]) -> List[Poly]:
    out = [Poly.const(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def check_orthogonality(params: ParamAssignment, N: int, label: str = "") -> Report:
    """L(P_i P_j) = 0 for i != j and L(P_n^2) = beta_1 ... beta_n, with L(X^k) = m_k."""
    rep = Report(f"orthogonality{' of ' + label if label else ''}, N = {N}")
    ops = orthogonal_polys(params, N)
    ms = moments(params, 2 * N)
    jc = JacobiCoefficients(params)
    norm = Poly.const(1)
    for i in range(N + 1):
        for j in range(i + 1):
            val = _functional(ms, _times(list(ops[i]), list(ops[j])))
            if i != j:
                rep.add(f"L(P_{i} P_{j}) = 0", val == 0, 0, val)
        if i >= 1:
            norm = norm * jc.beta(i)
        val = _functional(ms, _times(list(ops[i]), list(ops[i])))
        expected = _num(norm)
        rep.add(f"L(P_{i}^2) = beta_1..beta_{i}", val == expected, expected, val)
    return rep


# exponential polynomials ------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def exp_poly(n: int, variable: str = "x") -> Poly:
    """e_n(x) = sum_k S(n, k) x^k."""
    x = Poly.var(variable)
    out = Poly.const(0)
    for k in range(n + 1):
        out = out + stirling2(n, k) * x ** k
    return out


def radoux_det(n: int, variable: str = "x"):
    return hankel_det([exp_poly(i, variable) for i in range(2 * n + 1)], n)


def radoux_closed_form(n: int, variable: str = "x"):
    out = Poly.var(variable) ** comb(n + 1, 2)
    for k in range(1, n + 1):
        out = out * factorial(k)
    return out


# recovering the J-fraction from moments ---------------------------------------------

def jacobi_from_moments(seq: Sequence, count: int) -> Tuple[List, List]:
    """alpha_0.. and beta_1..beta_{count-1} recovered from rational moments.

    Uses the Stieltjes procedure on the moment functional; needs m_0..m_{2 count - 2}.
    Stops early if some L(P_n^2) vanishes or the moments run out for alpha.
    """
    ms = []
    for m in seq:
        v = _num(as_poly(m))
        if not _is_number(v):
            raise ValueError("jacobi_from_moments needs rational moments")
        ms.append(Fraction(v))
    if len(ms) < 2 * count - 1:
        raise ValueError(f"need {2 * count - 1} moments, got {len(ms)}")

    def L(coeffs):
        return sum((c * ms[k] for k, c in enumerate(coeffs)), Fraction(0))

    def mul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    alphas: List[Fraction] = []
    betas: List[Fraction] = []
    prev, cur = [], [Fraction(1)]
    prev_norm = None
    for n in range(count):
        norm = L(mul(cur, cur))
        if norm == 0:
            break
        if n >= 1:
            betas.append(norm / prev_norm)
        if len(ms) <= 2 * n + 1:
            break
        a = L(mul([Fraction(0)] + cur, cur)) / norm
        alphas.append(a)
        nxt = [Fraction(0)] + cur
        nxt = [x - a * (cur[i] if i < len(cur) else 0) for i, x in enumerate(nxt)]
        if n >= 1:
            nxt = [x - betas[-1] * (prev[i] if i < len(prev) else 0) for i, x in enumerate(nxt)]
        prev, cur, prev_norm = cur, nxt, norm
    return alphas, betas
