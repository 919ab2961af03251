"""The fourteen-parameter Jacobi continued fraction and its moments.

``moments`` extracts the coefficients of the J-fraction with the transfer
recurrence over path heights; ``brute_force_gf`` sums the statistic monomial
over all permutations, and ``verify_main`` compares the two.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from .perms import all_permutations, stats
from .poly import Poly, PolyError, Ring, as_poly, parse_poly, var_sort_key
from .report import Report

__all__ = [
    "PARAMETERS",
    "DEFAULT_SYMBOLIC_BOUND",
    "DEFAULT_NUMERIC_BOUND",
    "BoundError",
    "ParamAssignment",
    "JacobiCoefficients",
    "bracket",
    "bracket_factorial",
    "moments",
    "brute_force_gf",
    "verify_main",
    "parse_param_file",
    "parse_assignments",
]

PARAMETERS = ("a", "b", "c", "d", "f", "g", "h", "l", "p", "r", "s", "t", "u", "w")
ALIASES = {"ℓ": "l", "ell": "l"}
DEFAULT_SYMBOLIC_BOUND = 8
DEFAULT_NUMERIC_BOUND = 64

Value = Union[Poly, int, Fraction, str]


class BoundError(ValueError):
    """A requested size exceeds the configured bound."""


def _value(v: Value) -> Poly:
    if isinstance(v, str):
        return parse_poly(v)
    return as_poly(v)


@dataclass(frozen=True)
class ParamAssignment:
    """Values for the fourteen parameters; unset ones stay symbolic.

    ``color_weights``, when given, replaces ``u`` by their sum.
    """

    values: Mapping[str, Poly] = field(default_factory=dict)
    color_weights: Optional[Sequence[Poly]] = None

    def __post_init__(self):
        vals = {}
        for name, v in dict(self.values).items():
            name = ALIASES.get(name, name)
            if name not in PARAMETERS:
                raise ValueError(f"unknown parameter {name!r}")
            vals[name] = _value(v)
        for name in PARAMETERS:
            vals.setdefault(name, Poly.var(name))
        object.__setattr__(self, "values", vals)
        if self.color_weights is not None:
            cw = tuple(_value(v) for v in self.color_weights)
            if not cw:
                raise ValueError("color_weights needs at least one entry")
            object.__setattr__(self, "color_weights", cw)

    @classmethod
    def symbolic(cls) -> "ParamAssignment":
        return cls({})

    @classmethod
    def constant(cls, value: Value = 1, **overrides: Value) -> "ParamAssignment":
        """Every parameter set to ``value`` except the keyword overrides."""
        vals = {n: value for n in PARAMETERS}
        vals.update({ALIASES.get(k, k): v for k, v in overrides.items()})
        return cls(vals)

    @classmethod
    def of(cls, mapping: Mapping[str, Value], default: Optional[Value] = None,
           color_weights=None) -> "ParamAssignment":
        """Build from a partial mapping; missing names get ``default`` (symbolic if None)."""
        vals: Dict[str, Value] = {}
        if default is not None:
            vals = {n: default for n in PARAMETERS}
        for k, v in mapping.items():
            vals[ALIASES.get(k, k)] = v
        return cls(vals, color_weights)

    @classmethod
    def with_colors(cls, k: int, base: Optional["ParamAssignment"] = None) -> "ParamAssignment":
        """``u`` replaced by the symbolic sum u1 + ... + uk."""
        base = base or cls.symbolic()
        return cls(base.values, [Poly.var(f"u{i}") for i in range(1, k + 1)])

    def replace(self, **changes: Value) -> "ParamAssignment":
        vals = dict(self.values)
        vals.update({ALIASES.get(k, k): v for k, v in changes.items()})
        return ParamAssignment(vals, self.color_weights)

    def __getitem__(self, name: str) -> Poly:
        name = ALIASES.get(name, name)
        if name == "u" and self.color_weights is not None:
            total = Poly.const(0)
            for v in self.color_weights:
                total = total + v
            return total
        return self.values[name]

    def is_rational(self) -> bool:
        return all(self[n].is_constant() for n in PARAMETERS)

    def rational_values(self) -> Dict[str, Fraction]:
        out = {}
        for n in PARAMETERS:
            p = self[n]
            if not p.is_constant():
                raise ValueError(f"parameter {n} is not rational: {p}")
            out[n] = Fraction(p.constant())
        return out

    def variables(self) -> List[str]:
        names = set()
        for n in PARAMETERS:
            names.update(self[n].variables())
        return sorted(names, key=var_sort_key)

    def to_json(self) -> dict:
        out = {n: str(self.values[n]) for n in PARAMETERS}
        if self.color_weights is not None:
            out["color_weights"] = [str(v) for v in self.color_weights]
        return out

    def __str__(self):
        return ", ".join(f"{n}={self[n]}" for n in PARAMETERS)


def bracket(n: int, x: Value, y: Value) -> Poly:
    """[n]_{x,y} = x^{n-1} + x^{n-2} y + ... + y^{n-1}, with [0] = 0."""
    if n < 0:
        raise ValueError("bracket index must be nonnegative")
    x, y = _value(x), _value(y)
    total = Poly.const(0)
    for i in range(n):
        total = total + x ** (n - 1 - i) * y ** i
    return total


def bracket_factorial(n: int, x: Value, y: Value) -> Poly:
    out = Poly.const(1)
    for i in range(1, n + 1):
        out = out * bracket(i, x, y)
    return out


class JacobiCoefficients:
    """alpha_n and beta_n of the J-fraction, computed lazily and cached."""

    def __init__(self, params: ParamAssignment):
        self.source = params
        self._alpha: Dict[int, Poly] = {}
        self._beta: Dict[int, Poly] = {}

    def alpha(self, n: int) -> Poly:
        if n not in self._alpha:
            P = self.source
            self._alpha[n] = (P["u"] * P["w"] ** n + P["s"] * bracket(n, P["a"], P["b"])
                              + P["t"] * bracket(n, P["f"], P["g"]))
        return self._alpha[n]

    def beta(self, n: int) -> Poly:
        if n < 1:
            raise ValueError("beta is defined for n >= 1")
        if n not in self._beta:
            P = self.source
            self._beta[n] = (P["p"] * P["r"] * bracket(n, P["c"], P["d"])
                             * bracket(n, P["h"], P["l"]))
        return self._beta[n]

    def alphas(self, count: int) -> List[Poly]:
        return [self.alpha(i) for i in range(count)]

    def betas(self, count: int) -> List[Poly]:
        """beta_1 .. beta_count."""
        return [self.beta(i) for i in range(1, count + 1)]


def _transfer(alpha: Sequence, beta: Sequence, N: int, zero, one) -> list:
    """m_0..m_N from alpha[k] (k >= 0) and beta[k] (index k = beta_k, beta[0] unused)."""
    row = [one]
    out = [one]
    for m in range(1, N + 1):
        # only heights that can still return to 0 by step N matter
        top = min(m, N - m)
        nxt = []
        for k in range(top + 1):
            acc = zero
            if k >= 1 and k - 1 < len(row):
                acc = acc + row[k - 1]
            if k < len(row):
                acc = acc + alpha[k] * row[k]
            if k + 1 < len(row):
                acc = acc + beta[k + 1] * row[k + 1]
            nxt.append(acc)
        row = nxt
        out.append(row[0])
    return out


def moments(params: ParamAssignment, N: int, *, z_factor: Optional[Value] = None,
            symbolic_bound: int = DEFAULT_SYMBOLIC_BOUND,
            numeric_bound: int = DEFAULT_NUMERIC_BOUND) -> List:
    """m_0..m_N of the continued fraction under ``params``.

    Rational assignments return exact numbers (``int`` or ``Fraction``);
    otherwise polynomials.  ``z_factor`` applies z -> z * factor.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    jc = JacobiCoefficients(params)
    numeric = params.is_rational() and (z_factor is None or _value(z_factor).is_constant())
    bound = numeric_bound if numeric else symbolic_bound
    if N > bound:
        raise BoundError(f"order {N} exceeds the {'numeric' if numeric else 'symbolic'} "
                         f"bound {bound}")
    half = N // 2 + 1
    alpha = jc.alphas(half + 1)
    beta = [None] + jc.betas(half + 1)
    if numeric:
        alpha = [a.constant() for a in alpha]
        beta = [None] + [b.constant() for b in beta[1:]]
        ms = _transfer(alpha, beta, N, 0, 1)
        if z_factor is not None:
            f = _value(z_factor).constant()
            ms = [m * f ** i for i, m in enumerate(ms)]
        return [Fraction(m).numerator if Fraction(m).denominator == 1 else Fraction(m)
                for m in ms]
    ms = _transfer(alpha, beta, N, Poly.const(0), Poly.const(1))
    if z_factor is not None:
        f, pw = _value(z_factor), Poly.const(1)
        scaled = []
        for m in ms:
            scaled.append(m * pw)
            pw = pw * f
        ms = scaled
    return ms


def brute_force_gf(n: int, bound: int = DEFAULT_SYMBOLIC_BOUND) -> Poly:
    """Sum over S_n of the fourteen-variable statistic monomial."""
    if n > bound:
        raise BoundError(f"n={n} exceeds the brute-force bound {bound}")
    ring = Ring(PARAMETERS)
    counts: Counter = Counter()
    for sigma in all_permutations(n):
        st = stats(sigma)
        counts[(st.ile, st.nile, st.ie - st.ile, st.nie - st.nile, st.ilae, st.nilae,
                st.iae - st.ilae, st.niae - st.nilae, st.exc - st.le, st.aexc - st.lae,
                st.le, st.lae, st.fp, st.iefp)] += 1
    return Poly._raw({ring.encode(e): c for e, c in counts.items()}, ring)


def verify_main(N: int, bound: int = DEFAULT_SYMBOLIC_BOUND) -> Report:
    """Symbolic m_n against the permutation sum, for every n <= N."""
    if N > bound:
        raise BoundError(f"N={N} exceeds the symbolic bound {bound}")
    rep = Report(f"main theorem, n <= {N}")
    ms = moments(ParamAssignment.symbolic(), N, symbolic_bound=bound)
    for n in range(N + 1):
        oracle = brute_force_gf(n, bound)
        ok = ms[n] == oracle
        rep.add(f"n={n}: {len(oracle)} monomials, total weight {sum(c for _, c in oracle.items())}",
                ok, None if ok else str(oracle), None if ok else str(ms[n]))
    return rep


def parse_assignments(items: Iterable[str]) -> Dict[str, Poly]:
    """Parse ``name=value`` strings; values in the polynomial grammar."""
    out: Dict[str, Poly] = {}
    for item in items:
        if "=" not in item:
            raise ValueError(f"expected name=value, got {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        names = [ALIASES.get(n.strip(), n.strip()) for n in name.split(",")]
        try:
            poly = parse_poly(value)
        except PolyError as exc:
            raise ValueError(f"bad value for {name}: {exc}") from None
        for n in names:
            if n not in PARAMETERS:
                raise ValueError(f"unknown parameter {n!r}")
            out[n] = poly
    return out


def parse_param_file(text: str) -> ParamAssignment:
    """``name = value`` lines (``#`` comments); unset names remain symbolic.

    A comma list on the left (``h, s, t, u = 0``) assigns all of them.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return ParamAssignment(parse_assignments(lines))
