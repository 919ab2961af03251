"""Registry of named parameter specializations with reference data.

Entries live in ``data/catalog.ini``.  Each one carries the parameter
assignment, and optionally a bundled b-file or the name of a brute-force
oracle from :data:`ORACLES` to compare expansions against.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .cfrac import PARAMETERS, ParamAssignment, moments, parse_assignments
from .colored import (colored_stats, distribution, enumerate_colored)
from .perms import (PatternSpec, all_permutations, count_avoiders, descents, inversions,
                    occurrences)
from .poly import Poly, parse_poly
from .report import Report
from .seqio import plain, read_bfile

__all__ = [
    "CatalogError",
    "SpecializationSpec",
    "ORACLES",
    "TABLE2_ORDER",
    "CATALOG_PATH",
    "load_catalog",
    "get",
    "names",
    "list_names",
    "compare",
    "check_table2",
]

CATALOG_PATH = Path(__file__).resolve().parent / "data" / "catalog.ini"
TABLE2_ORDER = ("a", "b", "c", "d", "f", "g", "h", "l", "p", "r", "s", "t", "u")


class CatalogError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "catalog error"


@dataclass(frozen=True)
class SpecializationSpec:
    name: str
    group: str
    objects: str
    params_text: str
    assignment: ParamAssignment
    z_factor: Optional[Poly] = None
    reference: Optional[str] = None
    reference_kind: str = "sequence"
    oracle: Optional[str] = None
    point: Dict[str, Fraction] = field(default_factory=dict)

    @property
    def provenance(self) -> str:
        return {"table1": "Table 1", "table2": "Table 2",
                "corollary": "pattern / colored corollary"}.get(self.group, self.group)

    @property
    def has_reference(self) -> bool:
        return self.reference is not None or self.oracle is not None

    def evaluated(self) -> ParamAssignment:
        """The assignment with ``point`` substituted into every parameter."""
        if not self.point:
            return self.assignment
        vals = {n: _at_point(self.assignment[n], self.point) for n in PARAMETERS}
        return ParamAssignment(vals)

    def reference_values(self, N: int) -> List:
        """Reference m_0..m_N (shorter if the bundled file ends first)."""
        if self.oracle is not None:
            fn = ORACLES[self.oracle]
            return [fn(n) for n in range(N + 1)]
        if self.reference is None:
            raise CatalogError(f"{self.name} has no reference")
        data = read_bfile(CATALOG_PATH.parent / self.reference)
        if self.reference_kind == "even":
            seq = []
            for v in data:
                seq.extend([v, 0])
            data = seq[:-1]
        if self.point:
            data = [plain(_at_point(_as_value(v), self.point)) for v in data]
        return data[: N + 1]

    def to_json(self) -> dict:
        out = {"name": self.name, "provenance": self.provenance, "objects": self.objects,
               "params": self.params_text, "assignment": self.assignment.to_json()}
        if self.z_factor is not None:
            out["z_factor"] = str(self.z_factor)
        if self.reference:
            out["reference"] = self.reference
            out["reference_kind"] = self.reference_kind
        if self.oracle:
            out["oracle"] = self.oracle
        if self.point:
            out["point"] = {k: str(v) for k, v in self.point.items()}
        return out

    def describe(self) -> str:
        lines = [f"{self.name}  [{self.provenance}]", f"  objects:    {self.objects}",
                 f"  parameters: {self.params_text or '(all 1)'}"]
        if self.z_factor is not None:
            lines.append(f"  z -> z*({self.z_factor})")
        if self.point:
            lines.append("  point:      " + ", ".join(f"{k}={v}" for k, v in self.point.items()))
        if self.reference:
            lines.append(f"  reference:  {self.reference} ({self.reference_kind})")
        if self.oracle:
            lines.append(f"  oracle:     brute force '{self.oracle}'")
        return "\n".join(lines)


# brute-force oracles ----------------------------------------------------------------

def _perm_distribution(n: int, mono: Callable) -> Poly:
    return distribution(all_permutations(n), mono)


_ORACLE_BOUND = 10 ** 7
_C321 = PatternSpec.consecutive("321")
_V231 = PatternSpec.parse("2-31")


def _des_occ321(n: int) -> Poly:
    return _perm_distribution(n, lambda s: {"x": len(descents(s.word)),
                                            "q": occurrences(s, _C321)})


def _des_occ231(n: int) -> Poly:
    if n == 0:
        return Poly.const(1)
    return _perm_distribution(n, lambda s: {"x": len(descents(s.word)) + 1,
                                            "q": occurrences(s, _V231)})


def _inv(n: int) -> Poly:
    return _perm_distribution(n, lambda s: {"q": inversions(s.word)})


def _exc_inv(n: int) -> Poly:
    return _perm_distribution(n, lambda s: {"x": sum(1 for i, a in enumerate(s.word, 1) if a > i),
                                            "q": inversions(s.word)})


def _colored_inv_2(n: int) -> Poly:
    return distribution(enumerate_colored(n, 2, _ORACLE_BOUND), lambda P: {"q": colored_stats(P).inv})


def _colored_exc_fix_2(n: int) -> Poly:
    def mono(P):
        st = colored_stats(P)
        return {"x": st.exc, "y": st.aexc, "q": st.fix}
    return distribution(enumerate_colored(n, 2, _ORACLE_BOUND), mono)


def _set_partitions(n: int) -> Iterator[List[List[int]]]:
    """Blocks of [n] in restricted-growth order, each block increasing."""
    def grow(i, blocks):
        if i > n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from grow(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from grow(i + 1, blocks)
        blocks.pop()
    yield from grow(1, [])


def _arcs(blocks) -> List[Tuple[int, int]]:
    return [(b[j], b[j + 1]) for b in blocks for j in range(len(b) - 1)]


def _cross_nest(arcs) -> Tuple[int, int]:
    cr = ne = 0
    for i, (a1, b1) in enumerate(arcs):
        for a2, b2 in arcs[i + 1:]:
            (x1, y1), (x2, y2) = sorted([(a1, b1), (a2, b2)])
            if x1 < x2 < y1 < y2:
                cr += 1
            elif x1 < x2 and y2 < y1:
                ne += 1
    return cr, ne


def _partition_distribution(n: int, keep: Callable, mono: Callable) -> Poly:
    return distribution((p for p in _set_partitions(n) if keep(p)), mono)


def _matchings(n: int, with_nestings: bool) -> Poly:
    if n % 2:
        return Poly.const(0)

    def mono(p):
        cr, ne = _cross_nest(_arcs(p))
        return {"q": cr, "t": ne} if with_nestings else {"q": cr}
    return _partition_distribution(n, lambda p: all(len(b) == 2 for b in p), mono)


def _partitions_crossings(n: int) -> Poly:
    return _partition_distribution(n, lambda p: True,
                                   lambda p: {"q": _cross_nest(_arcs(p))[0], "lambda": len(p)})


def _partitions_crossings_nestings(n: int) -> Poly:
    # u = 0 removes singleton blocks
    def mono(p):
        cr, ne = _cross_nest(_arcs(p))
        return {"q": cr, "x": ne}
    return _partition_distribution(n, lambda p: all(len(b) > 1 for b in p), mono)


def _consecutive_321_avoiders(n: int) -> int:
    return count_avoiders(n, _C321)


ORACLES: Dict[str, Callable[[int], object]] = {
    "des-occ321": _des_occ321,
    "des-occ2-31": _des_occ231,
    "consecutive-321-avoiders": _consecutive_321_avoiders,
    "inversions": _inv,
    "exc-inv": _exc_inv,
    "inversions-colored-2": _colored_inv_2,
    "colored-exc-fix-2": _colored_exc_fix_2,
    "matchings-crossings": lambda n: _matchings(n, False),
    "matchings-crossings-nestings": lambda n: _matchings(n, True),
    "partitions-crossings": _partitions_crossings,
    "partitions-crossings-nestings": _partitions_crossings_nestings,
}


# loading ---------------------------------------------------------------------------

def _parse_point(text: str) -> Dict[str, Fraction]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(";"))):
        name, value = (s.strip() for s in item.split("=", 1))
        for n in name.split(","):
            out[n.strip()] = Fraction(value)
    return out


def _parse_section(name: str, sec) -> SpecializationSpec:
    group = sec.get("group", "table1")
    if "tuple" in sec:
        entries = [e.strip() for e in sec["tuple"].split(",")]
        if len(entries) != len(TABLE2_ORDER):
            raise ValueError(f"{name}: tuple needs {len(TABLE2_ORDER)} entries")
        vals = {k: parse_poly(v) for k, v in zip(TABLE2_ORDER, entries)}
        vals["w"] = Poly.const(0)
        params_text = "(" + ", ".join(entries) + "), w = 0"
    else:
        params_text = sec.get("params", "").strip()
        items = [s.strip() for s in params_text.split(";") if s.strip()]
        vals = {n: Poly.const(1) for n in PARAMETERS}
        vals.update(parse_assignments(items))
    oracle = sec.get("oracle")
    if oracle is not None and oracle not in ORACLES:
        raise ValueError(f"{name}: unknown oracle {oracle!r}")
    z = sec.get("z_factor")
    return SpecializationSpec(
        name=name, group=group, objects=sec.get("objects", ""), params_text=params_text,
        assignment=ParamAssignment(vals),
        z_factor=parse_poly(z) if z else None,
        reference=sec.get("reference"), reference_kind=sec.get("reference_kind", "sequence"),
        oracle=oracle, point=_parse_point(sec.get("point", "")))


def load_catalog(path: Path = CATALOG_PATH) -> Dict[str, SpecializationSpec]:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=None)
    parser.optionxform = str
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    return {name: _parse_section(name, parser[name]) for name in parser.sections()}


@lru_cache(maxsize=1)
def _registry() -> Dict[str, SpecializationSpec]:
    return load_catalog()


def get(name: str) -> SpecializationSpec:
    try:
        return _registry()[name]
    except KeyError:
        raise CatalogError(f"unknown specialization {name!r}; "
                           f"known: {', '.join(_registry())}") from None


def names(group: Optional[str] = None) -> List[str]:
    return [n for n, s in _registry().items() if group is None or s.group == group]


list_names = names


def compare(name: str, N: int) -> Report:
    """Expand ``name`` to order N and diff against its reference, index by index."""
    spec = get(name)
    rep = Report(f"catalog {name}, N = {N}")
    if not spec.has_reference:
        rep.add("reference available", False, "a reference", None,
                note="entry has no bundled reference or oracle")
        return rep
    expected = spec.reference_values(N)
    top = len(expected) - 1
    ms = moments(spec.evaluated(), top, z_factor=spec.z_factor, symbolic_bound=max(top, 8))
    for n in range(top + 1):
        exp, act = plain(_as_value(expected[n])), plain(_as_value(ms[n]))
        rep.add(f"m_{n}", exp == act, exp, act)
    if top < N:
        rep.add(f"reference length", True, note=f"reference ends at index {top}")
    return rep


def _at_point(poly: Poly, point: Dict[str, Fraction]) -> Poly:
    own = set(poly.variables())
    return poly.subst({k: v for k, v in point.items() if k in own})


def _as_value(v):
    return v if isinstance(v, Poly) else Poly.const(v)


def check_table2(N: int = 5) -> Report:
    """Orthogonality of every Table-2 family at its rational point."""
    from .moments import check_orthogonality
    rep = Report(f"Table 2 orthogonality, N = {N}")
    for name in names("table2"):
        spec = get(name)
        rep.extend(check_orthogonality(spec.evaluated(), N, name), prefix=f"{name}: ")
    return rep
