"""Exact sparse multivariate polynomials over the rationals.

Monomials are packed into a single Python integer, one signed 16-bit digit per
ring variable, so that multiplying monomials is integer addition.  Exponents
may be negative (Laurent monomials); several orthogonal-polynomial rows use
powers such as ``q^-2``.

Coefficients are ``int`` whenever integral and ``Fraction`` otherwise.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

__all__ = [
    "BASE_ORDER",
    "PolyError",
    "UnknownVariableError",
    "Ring",
    "Poly",
    "TruncatedSeries",
    "var",
    "const",
    "as_poly",
    "parse_poly",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "poly_subst",
    "series_mul",
    "series_reciprocal",
]

BASE_ORDER = ("a", "b", "c", "d", "f", "g", "h", "l", "p", "r", "s", "t", "u", "w",
              "x", "q", "y", "lambda")
_BASE_INDEX = {name: i for i, name in enumerate(BASE_ORDER)}

_W = 16
_RADIX = 1 << _W
_HALF = 1 << (_W - 1)
_MASK = _RADIX - 1

Number = Union[int, Fraction]


class PolyError(ValueError):
    pass


class UnknownVariableError(PolyError):
    pass


def var_sort_key(name: str):
    """Canonical variable order: the fourteen parameters, auxiliaries, u1..uK, then others."""
    if name in _BASE_INDEX:
        return (0, _BASE_INDEX[name], "")
    m = re.fullmatch(r"u(\d+)", name)
    if m:
        return (1, int(m.group(1)), "")
    return (2, 0, name)


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Ring:
    """An ordered, interned set of variable names."""

    _interned: Dict[Tuple[str, ...], "Ring"] = {}

    def __new__(cls, names: Iterable[str] = ()):
        ordered = tuple(sorted(set(names), key=var_sort_key))
        ring = cls._interned.get(ordered)
        if ring is None:
            for name in ordered:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                    raise PolyError(f"invalid variable name {name!r}")
            ring = super().__new__(cls)
            ring.names = ordered
            ring.index = {n: i for i, n in enumerate(ordered)}
            ring._conv = {}
            cls._interned[ordered] = ring
        return ring

    @classmethod
    def standard(cls, k: int = 0, extra: Iterable[str] = ()) -> "Ring":
        names = list(BASE_ORDER) + [f"u{i}" for i in range(1, k + 1)] + list(extra)
        return cls(names)

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"Ring({list(self.names)!r})"

    def __reduce__(self):
        return (Ring, (self.names,))

    def encode(self, exps: Sequence[int]) -> int:
        key = 0
        for i, e in enumerate(exps):
            if e:
                if not -_HALF < e < _HALF:
                    raise PolyError("exponent out of range")
                key += e << (_W * i)
        return key

    def decode(self, key: int) -> Tuple[int, ...]:
        out = []
        for _ in range(len(self.names)):
            d = key & _MASK
            if d >= _HALF:
                d -= _RADIX
            out.append(d)
            key = (key - d) >> _W
        return tuple(out)

    def monomial_key(self, exps: Mapping[str, int]) -> int:
        key = 0
        for name, e in exps.items():
            if name not in self.index:
                raise UnknownVariableError(f"unknown variable {name!r}")
            key += e << (_W * self.index[name])
        return key

    def unit(self, name: str) -> int:
        try:
            return 1 << (_W * self.index[name])
        except KeyError:
            raise UnknownVariableError(f"unknown variable {name!r}") from None

    def union(self, other: "Ring") -> "Ring":
        if other is self:
            return self
        return Ring(self.names + other.names)

    def converter(self, target: "Ring"):
        """Return a function re-keying monomials of this ring into ``target``."""
        fn = self._conv.get(target)
        if fn is None:
            shifts = [_W * target.index[n] for n in self.names]

            def fn(key, _shifts=shifts, _decode=self.decode):
                new = 0
                for e, s in zip(_decode(key), _shifts):
                    if e:
                        new += e << s
                return new

            self._conv[target] = fn
        return fn


EMPTY_RING = Ring(())


def _coerce_number(value) -> Number:
    if isinstance(value, bool):
        raise PolyError("booleans are not polynomial coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    if isinstance(value, Rational):
        return _norm(Fraction(value.numerator, value.denominator))
    raise PolyError(f"cannot use {value!r} as an exact coefficient")


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, terms: Optional[Mapping[int, Number]] = None, ring: Ring = EMPTY_RING):
        self.ring = ring
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: Dict[int, Number], ring: Ring) -> "Poly":
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, value) -> "Poly":
        c = _coerce_number(value)
        return cls._raw({0: c} if c else {}, EMPTY_RING)

    @classmethod
    def var(cls, name: str, ring: Optional[Ring] = None) -> "Poly":
        ring = ring if ring is not None else Ring((name,))
        return cls._raw({ring.unit(name): 1}, ring)

    @classmethod
    def from_monomial(cls, exps: Mapping[str, int], coeff=1, ring: Optional[Ring] = None) -> "Poly":
        ring = ring if ring is not None else Ring(n for n, e in exps.items())
        c = _coerce_number(coeff)
        return cls._raw({ring.monomial_key(exps): c} if c else {}, ring)

    def to_ring(self, ring: Ring) -> "Poly":
        if ring is self.ring:
            return self
        if all(n in ring.index for n in self.ring.names):
            conv = self.ring.converter(ring)
            return Poly._raw({conv(k): c for k, c in self.terms.items()}, ring)
        missing = set(self.variables()) - set(ring.names)
        if missing:
            raise UnknownVariableError(f"variables {sorted(missing)} not in target ring")
        pairs = [(self.ring.index[n], _W * ring.index[n]) for n in self.ring.names if n in ring.index]
        out = {}
        for k, c in self.terms.items():
            e = self.ring.decode(k)
            out[sum(e[i] << s for i, s in pairs)] = c
        return Poly._raw(out, ring)

    # alignment ---------------------------------------------------------------
    def _align(self, other) -> Tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.ring is self.ring:
            return self, other
        if not other.terms or (len(other.terms) == 1 and 0 in other.terms):
            return self, Poly._raw(dict(other.terms), self.ring)
        if not self.terms or (len(self.terms) == 1 and 0 in self.terms):
            return Poly._raw(dict(self.terms), other.ring), other
        ring = self.ring.union(other.ring)
        return self.to_ring(ring), other.to_ring(ring)

    # arithmetic --------------------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._align(other)
        except PolyError:
            return NotImplemented
        out = dict(a.terms)
        for k, c in b.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return Poly._raw(out, a.ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({k: -c for k, c in self.terms.items()}, self.ring)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except PolyError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            a, b = self._align(other)
        except PolyError:
            return NotImplemented
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: Dict[int, Number] = {}
        get = out.get
        for kb, cb in b.terms.items():
            if cb == 1:
                for ka, ca in a.terms.items():
                    k = ka + kb
                    out[k] = get(k, 0) + ca
            else:
                for ka, ca in a.terms.items():
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
        return Poly._raw({k: _norm(c) for k, c in out.items() if c}, a.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            if len(self.terms) != 1:
                raise PolyError("negative power of a non-monomial")
            (k, c), = self.terms.items()
            return Poly._raw({-k * (-n): _norm(Fraction(1) / Fraction(c) ** (-n))}, self.ring)
        result = Poly._raw({0: 1}, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if len(other.terms) != 1:
            raise PolyError("division only by a single nonzero term")
        return self * other ** -1

    def __rtruediv__(self, other):
        return Poly.const(other) / self

    # comparison --------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(0) == other
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring is self.ring:
            return self.terms == other.terms
        a, b = self._align(other)
        return a.terms == b.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash(frozenset((tuple(sorted(m.items())), c) for m, c in self.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection --------------------------------------------------------------
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant(self) -> Number:
        """The value of a constant polynomial (raises if not constant)."""
        if not self.is_constant():
            raise PolyError(f"polynomial {self} is not constant")
        return self.terms.get(0, 0)

    def constant_term(self) -> Number:
        return self.terms.get(0, 0)

    def variables(self) -> List[str]:
        seen = [False] * len(self.ring)
        for k in self.terms:
            for i, e in enumerate(self.ring.decode(k)):
                if e:
                    seen[i] = True
        return [n for n, s in zip(self.ring.names, seen) if s]

    def items(self) -> Iterator[Tuple[Dict[str, int], Number]]:
        """Yield (monomial, coefficient) in canonical graded-lex order."""
        names = self.ring.names
        for exps, c in self._sorted():
            yield {n: e for n, e in zip(names, exps) if e}, c

    def _sorted(self) -> List[Tuple[Tuple[int, ...], Number]]:
        dec = [(self.ring.decode(k), c) for k, c in self.terms.items()]
        dec.sort(key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
        return dec

    def coefficient(self, exps: Mapping[str, int]) -> Number:
        try:
            key = self.ring.monomial_key({n: e for n, e in exps.items() if e})
        except UnknownVariableError:
            return 0
        return self.terms.get(key, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.ring.decode(k)) for k in self.terms)

    def degree(self, name: str) -> int:
        if name not in self.ring.index:
            return 0 if self.terms else -1
        i = self.ring.index[name]
        if not self.terms:
            return -1
        return max(self.ring.decode(k)[i] for k in self.terms)

    def __len__(self):
        return len(self.terms)

    # evaluation --------------------------------------------------------------
    def evaluate(self, values: Mapping[str, object]) -> Number:
        """Evaluate at an exact rational point; every variable present needs a value."""
        needed = self.variables()
        missing = [n for n in needed if n not in values]
        if missing:
            raise UnknownVariableError(f"no value for variables {missing}")
        vals = {n: _coerce_number(values[n]) for n in needed}
        idx = [(self.ring.index[n], vals[n]) for n in needed]
        total: Number = 0
        for k, c in self.terms.items():
            exps = self.ring.decode(k)
            term: Number = c
            for i, v in idx:
                e = exps[i]
                if e > 0:
                    term *= v ** e
                elif e < 0:
                    if v == 0:
                        raise PolyError("negative power of zero during evaluation")
                    term *= Fraction(1) / Fraction(v) ** (-e)
            total += term
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    def subst(self, mapping: Mapping[str, object]) -> "Poly":
        """Replace variables by polynomials (or numbers)."""
        for name in mapping:
            if name not in self.ring.index:
                raise UnknownVariableError(f"unknown variable {name!r}")
        repl = {n: as_poly(v) for n, v in mapping.items()}
        keep = [n for n in self.ring.names if n not in repl]
        base_ring = Ring(keep)
        for p in repl.values():
            base_ring = base_ring.union(p.ring)
        idx_repl = [(self.ring.index[n], repl[n]) for n in repl]
        keep_idx = [(self.ring.index[n], _W * base_ring.index[n]) for n in keep]
        powers: Dict[Tuple[int, int], Poly] = {}
        acc: Dict[int, Number] = {}
        result = Poly._raw({}, base_ring)
        for k, c in self.terms.items():
            exps = self.ring.decode(k)
            mono = 0
            for i, s in keep_idx:
                if exps[i]:
                    mono += exps[i] << s
            factor = None
            for i, p in idx_repl:
                e = exps[i]
                if e:
                    pw = powers.get((i, e))
                    if pw is None:
                        pw = powers[(i, e)] = p ** e
                    factor = pw if factor is None else factor * pw
            if factor is None:
                acc[mono] = acc.get(mono, 0) + c
            else:
                result = result + Poly._raw({mono: c}, base_ring) * factor
        result = result + Poly._raw({k: _norm(c) for k, c in acc.items() if c}, base_ring)
        return result

    def exact_divide(self, other: "Poly") -> "Poly":
        """Exact division; raises PolyError if ``other`` does not divide ``self``."""
        a, b = self._align(other)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if len(b.terms) == 1:
            return a / b
        ring = a.ring
        if any(e < 0 for k in list(a.terms) + list(b.terms) for e in ring.decode(k)):
            raise PolyError("exact division of Laurent polynomials is not supported")

        def lead(terms):
            return max(terms, key=lambda k: (sum(ring.decode(k)), ring.decode(k)))

        lb = lead(b.terms)
        cb = Fraction(b.terms[lb])
        lb_exps = ring.decode(lb)
        rem = dict(a.terms)
        quot: Dict[int, Number] = {}
        while rem:
            lr = lead(rem)
            diff = [x - y for x, y in zip(ring.decode(lr), lb_exps)]
            if any(e < 0 for e in diff):
                raise PolyError("polynomial division is not exact")
            qk = lr - lb
            qc = _norm(Fraction(rem[lr]) / cb)
            quot[qk] = qc
            for kb, c in b.terms.items():
                k = kb + qk
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = _norm(v)
                else:
                    rem.pop(k, None)
        return Poly._raw(quot, ring)

    # text --------------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        names = self.ring.names
        for exps, c in self._sorted():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


def var(name: str) -> Poly:
    return Poly.var(name)


def const(value) -> Poly:
    return Poly.const(value)


def as_poly(value, ring: Optional[Ring] = None) -> Poly:
    """Coerce a Poly, integer, Fraction or polynomial text to a Poly."""
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return parse_poly(value, ring)
    return Poly.const(value)


# parsing ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"unexpected character at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str, ring: Optional[Ring]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if (kind, val) != ("op", op):
            raise PolyError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Poly:
        if not self.toks:
            raise PolyError("empty polynomial expression")
        p = self.expr()
        if self.i != len(self.toks):
            raise PolyError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            q = self.unary()
            p = p * q if op == "*" else p / q
        return p

    def unary(self) -> Poly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.unary()
            if not e.is_constant() or not isinstance(e.constant(), int):
                raise PolyError(f"exponent must be an integer in {self.text!r}")
            return base ** e.constant()
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.const(int(val))
        if kind == "id":
            if self.ring is not None and val not in self.ring.index:
                raise UnknownVariableError(f"unknown variable {val!r}")
            return Poly.var(val, self.ring)
        if (kind, val) == ("op", "("):
            p = self.expr()
            self.expect(")")
            return p
        raise PolyError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, ring: Optional[Ring] = None) -> Poly:
    """Parse ``3*a^2*b - 1/2*c``-style text.  With ``ring`` given, other names are rejected."""
    p = _Parser(text, ring).parse()
    return p.to_ring(ring) if ring is not None else p


# functional aliases -----------------------------------------------------------

def poly_add(p, q) -> Poly:
    return as_poly(p) + as_poly(q)


def poly_mul(p, q) -> Poly:
    return as_poly(p) * as_poly(q)


def poly_eval(p, values: Mapping[str, object]) -> Number:
    return as_poly(p).evaluate(values)


def poly_subst(p, mapping: Mapping[str, object]) -> Poly:
    return as_poly(p).subst(mapping)


# truncated power series ---------------------------------------------------------

class TruncatedSeries:
    """Power series in a formal variable ``z`` known up to ``z^order``."""

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Iterable, order: Optional[int] = None):
        coeffs = [as_poly(c) for c in coefficients]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise PolyError("series order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs += [Poly.const(0)] * (order + 1 - len(coeffs))
        self.coefficients = tuple(coeffs)
        self.order = order

    def __getitem__(self, n: int) -> Poly:
        return self.coefficients[n]

    def __len__(self):
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coefficients, other.coefficients))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(str(c) for c in self.coefficients)}])"

    def scale_z(self, factor) -> "TruncatedSeries":
        """Substitute z -> factor*z, i.e. multiply the n-th coefficient by factor^n."""
        factor = as_poly(factor)
        out, pw = [], Poly.const(1)
        for c in self.coefficients:
            out.append(c * pw)
            pw = pw * factor
        return TruncatedSeries(out, self.order)


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    n = min(s.order, t.order)
    out = []
    for k in range(n + 1):
        acc = Poly.const(0)
        for i in range(k + 1):
            acc = acc + s[i] * t[k - i]
        out.append(acc)
    return TruncatedSeries(out, n)


def series_reciprocal(s: TruncatedSeries) -> TruncatedSeries:
    """1/s to the same order; the constant term must be a nonzero rational."""
    c0 = s[0]
    if not c0.is_constant() or c0.constant() == 0:
        raise PolyError("series constant term is not an invertible constant")
    inv0 = Fraction(1) / Fraction(c0.constant())
    out = [Poly.const(inv0)]
    for k in range(1, s.order + 1):
        acc = Poly.const(0)
        for i in range(1, k + 1):
            acc = acc + s[i] * out[k - i]
        out.append(acc * (-inv0))
    return TruncatedSeries(out, s.order)
