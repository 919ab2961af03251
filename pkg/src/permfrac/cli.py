"""The ``permfrac`` command.

Exit codes: 0 when everything checked out, 1 when a comparison found a
mismatch, 2 for usage or input errors.  ``--json`` switches every subcommand
to a JSON document carrying ``"schema": 1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import arrangements as arr
from . import catalog
from . import moments as mom
from .cfrac import (DEFAULT_NUMERIC_BOUND, DEFAULT_SYMBOLIC_BOUND, PARAMETERS, ParamAssignment,
                    moments, parse_assignments, parse_param_file, verify_main)
from .colored import check_des_exc_equidistribution, verify_colored_corollaries
from .motzkin import LabeledMotzkinPath, PathError, eta, eta_inverse, weight
from .perms import PatternSpec, index_profiles, parse_permutation, stat_monomial, stats
from .poly import Poly, PolyError, parse_poly
from .report import Report, jsonable
from .seqio import BFileError, plain, read_bfile

SCHEMA = 1
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# output -----------------------------------------------------------------------------

def _emit(args, command: str, status: str, payload: Dict[str, Any], text: str) -> int:
    if args.json:
        doc = {"schema": SCHEMA, "command": command, "status": status}
        doc.update(jsonable(payload))
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        print(text)
    return EXIT_OK if status == "ok" else EXIT_MISMATCH


def _emit_report(args, command: str, rep: Report) -> int:
    return _emit(args, command, rep.status, {"report": rep.to_json()}, rep.to_text())


# parameter handling -------------------------------------------------------------------

def _add_param_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", metavar="FILE", help="parameter file with 'name = value' lines")
    p.add_argument("--set", metavar="NAME=VALUE", action="append", default=[],
                   help="assign a parameter; 'h,s,t,u=0' assigns several (repeatable)")
    p.add_argument("--catalog", metavar="NAME", help="start from a catalog specialization")
    p.add_argument("--default", metavar="VALUE",
                   help="value for parameters left unset (default: keep them symbolic)")


def _assignment(args) -> ParamAssignment:
    base: Dict[str, Poly] = {}
    if getattr(args, "catalog", None):
        spec = catalog.get(args.catalog)
        base = dict(spec.evaluated().values)
    if args.default is not None:
        default = parse_poly(args.default)
        for name in PARAMETERS:
            base.setdefault(name, default)
    if args.params:
        text = Path(args.params).read_text(encoding="utf-8")
        base.update({k: v for k, v in parse_param_file(text).values.items()
                     if not (v == Poly.var(k) and k in base)})
    base.update(parse_assignments(args.set))
    return ParamAssignment(base)


# subcommands ----------------------------------------------------------------------------

def cmd_stats(args) -> int:
    sigma = parse_permutation(args.perm)
    st = stats(sigma)
    profiles = [{"index": p.index, "class": p.cls.value, "inve": p.inve, "ninve": p.ninve,
                 "inva": p.inva, "ninva": p.ninva, "iefp": p.iefp_i}
                for p in index_profiles(sigma)]
    mono = stat_monomial(st)
    lines = [f"permutation {sigma}",
             "statistics: " + ", ".join(f"{k}={v}" for k, v in st.as_dict().items()),
             f"monomial:   {Poly.from_monomial(mono)}",
             "index  class           inve ninve inva ninva iefp"]
    for p in profiles:
        lines.append(f"{p['index']:>5}  {p['class']:<15} {p['inve']:>4} {p['ninve']:>5} "
                     f"{p['inva']:>4} {p['ninva']:>5} {p['iefp']:>4}")
    return _emit(args, "stats", "ok",
                 {"permutation": list(sigma.word), "stats": st.as_dict(),
                  "monomial": str(Poly.from_monomial(mono)), "profiles": profiles},
                 "\n".join(lines))


def cmd_path(args) -> int:
    sigma = parse_permutation(args.perm)
    path = eta(sigma)
    text = "\n".join([f"permutation {sigma}", f"path:    {path.encode()}",
                      f"kinds:   {' '.join(path.kinds())}",
                      f"labels:  {' '.join(path.labels())}",
                      f"heights: {' '.join(map(str, path.heights()))}",
                      f"weight:  {weight(path)}"])
    return _emit(args, "path", "ok",
                 {"permutation": list(sigma.word), "encoding": path.encode(),
                  "labels": path.labels(), "path": path.to_json(), "weight": str(weight(path))},
                 text)


def cmd_unpath(args) -> int:
    if args.from_json:
        doc = json.loads(Path(args.from_json).read_text())
        # accept the output of `permfrac --json path` as well as a bare path object
        if isinstance(doc, dict) and "path" in doc and "steps" not in doc:
            doc = doc["path"]
        path = LabeledMotzkinPath.from_json(doc)
    elif args.path:
        path = LabeledMotzkinPath.decode(" ".join(args.path))
    else:
        raise UsageError("give a path encoding or --from-json FILE")
    sigma = eta_inverse(path)
    return _emit(args, "unpath", "ok",
                 {"encoding": path.encode(), "permutation": list(sigma.word)},
                 f"path:        {path.encode()}\npermutation: {sigma}")


def cmd_expand(args) -> int:
    params = _assignment(args)
    if args.symbolic and args.default is not None:
        raise UsageError("--symbolic and --default are mutually exclusive")
    z = parse_poly(args.z_factor) if args.z_factor else None
    ms = moments(params, args.n, z_factor=z, symbolic_bound=args.bound,
                 numeric_bound=max(args.bound, DEFAULT_NUMERIC_BOUND))
    at = {}
    if args.at:
        at = {k: v for k, v in parse_assignments_free(args.at).items()}
    values = [plain(m if isinstance(m, Poly) else Poly.const(m)) for m in ms]
    lines = [f"m_{i} = {v}" for i, v in enumerate(values)]
    payload: Dict[str, Any] = {"params": params.to_json(), "moments": values}
    if at:
        evaluated = [plain(_at(v, at)) for v in values]
        payload["evaluated"] = evaluated
        lines.append("at " + ", ".join(f"{k}={v}" for k, v in at.items()) + ": "
                     + ", ".join(map(str, evaluated)))
    return _emit(args, "expand", "ok", payload, "\n".join(lines))


def parse_assignments_free(items: Sequence[str]) -> Dict[str, Poly]:
    """``name=value`` pairs for arbitrary variable names (used by --at)."""
    out: Dict[str, Poly] = {}
    for item in items:
        for piece in item.split(";"):
            if not piece.strip():
                continue
            if "=" not in piece:
                raise UsageError(f"expected name=value, got {piece!r}")
            name, value = (s.strip() for s in piece.split("=", 1))
            for n in name.split(","):
                out[n.strip()] = parse_poly(value)
    return out


def _at(value, point: Dict[str, Poly]):
    if not isinstance(value, Poly):
        return Poly.const(value)
    if point.get("*") is not None:
        point = {**{v: point["*"] for v in value.variables()}, **point}
        point.pop("*")
    own = set(value.variables())
    return value.subst({k: v for k, v in point.items() if k in own})


def cmd_verify(args) -> int:
    what = args.what
    if what == "main":
        rep = verify_main(args.n, bound=args.bound)
    elif what == "colored":
        rep = verify_colored_corollaries(n_max=args.n, k_max=args.k,
                                         inv_k1_n_max=max(args.n, args.inv_n),
                                         exc_inv_n_max=args.n)
        rep.extend(check_des_exc_equidistribution(args.n, args.k), prefix="des ~ exc: ")
    elif what == "arrangements":
        rep = _verify_arrangements(args.n, args.k)
    else:
        rep = arr.conjecture_checks(args.n, args.k, variants=not args.no_variants)
        rep.extend(arr.proved_equidistributions(args.n, args.k), prefix="proved: ")
    return _emit_report(args, f"verify {what}", rep)


def _verify_arrangements(n_max: int, k_max: int) -> Report:
    rep = Report(f"k-arrangements, n <= {n_max}, k <= {k_max}")
    for k in range(0, k_max + 1):
        for n in range(n_max + 1):
            counts = arr.count_all_methods(k, n)
            rep.add(f"count methods agree, k={k}, n={n}: {counts['recursion']}",
                    len(set(counts.values())) == 1, counts["recursion"], counts)
    pat = PatternSpec.classical("312")
    for n in range(n_max + 1):
        hist = arr.avoiders(2, n, pat, refine_by_negatives=True)
        total = sum(hist.values())
        rep.add(f"2-arrangements avoiding 312, n={n}: Catalan(n+1)",
                total == arr.catalan(n + 1), arr.catalan(n + 1), total)
        ballot = {j: arr.ballot(n, j) for j in range(n + 1) if arr.ballot(n, j)}
        rep.add(f"2-arrangements avoiding 312, n={n}: ballot refinement", hist == ballot,
                ballot, hist)
    gf_n = min(n_max, 5)
    for k in range(1, min(k_max, 3) + 1):
        rep.extend(arr.refined_gf_check(k, gf_n), prefix=f"refined gf k={k}: ")
    return rep


def _parse_seq(text: str) -> List:
    return [plain(parse_poly(x)) for x in text.replace(";", ",").split(",") if x.strip()]


def cmd_hankel(args) -> int:
    if args.sequence:
        seq = _parse_seq(args.sequence)
        dets = [mom.hankel_det(seq, k) for k in range(min(args.n, (len(seq) - 1) // 2) + 1)]
        lines = [f"H_{k} = {d}" for k, d in enumerate(dets)]
        return _emit(args, "hankel", "ok", {"determinants": dets}, "\n".join(lines))
    params = _assignment(args)
    ms = moments(params, 2 * args.n, symbolic_bound=max(args.bound, 2 * args.n),
                 numeric_bound=max(DEFAULT_NUMERIC_BOUND, 2 * args.n))
    rows, ok = [], True
    for k in range(args.n + 1):
        row = {"n": k, "elimination": mom.hankel_det(ms, k)}
        if args.closed_form:
            row["closed_form"] = mom.hankel_closed_form(params, k)
            row["product_form"] = mom.hankel_product_form(params, k)
            row["ok"] = row["elimination"] == row["closed_form"] == row["product_form"]
            ok = ok and row["ok"]
        rows.append(row)
    lines = []
    for r in rows:
        line = f"H_{r['n']} = {r['elimination']}"
        if args.closed_form:
            line += f"   closed form {'matches' if r['ok'] else 'DIFFERS: ' + str(r['closed_form'])}"
        lines.append(line)
    return _emit(args, "hankel", "ok" if ok else "mismatch",
                 {"params": params.to_json(), "determinants": rows}, "\n".join(lines))


def cmd_classify(args) -> int:
    params = _assignment(args)
    if not params.is_rational():
        raise UsageError("classify needs numeric values for every parameter "
                         f"(unset: {', '.join(params.variables())}); try --default 1")
    res = mom.classify(params, scan=args.scan)
    text = f"{res}\n  {res.reason}" if res.reason else str(res)
    return _emit(args, "classify", "ok", {"classification": res.to_json()}, text)


def cmd_orthopoly(args) -> int:
    params = _assignment(args)
    ops = mom.orthogonal_polys(params, args.n)
    formatted = ops.format(args.variable)
    lines = [f"P_{i} = {p}" for i, p in enumerate(formatted)]
    status = "ok"
    payload: Dict[str, Any] = {"params": params.to_json(), "polynomials": formatted}
    if args.check:
        rep = mom.check_orthogonality(params, args.n)
        status = rep.status
        payload["report"] = rep.to_json()
        lines.append(rep.to_text())
    return _emit(args, "orthopoly", status, payload, "\n".join(lines))


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = [catalog.get(n) for n in catalog.names(args.group)]
        text = "\n".join(f"{s.name:<32} {s.provenance:<28} {s.params_text}" for s in rows)
        return _emit(args, "catalog list", "ok",
                     {"entries": [{"name": s.name, "provenance": s.provenance,
                                   "params": s.params_text} for s in rows]}, text)
    if not args.name:
        raise UsageError(f"catalog {args.action} needs a NAME")
    try:
        spec = catalog.get(args.name)
    except catalog.CatalogError as exc:
        raise UsageError(str(exc)) from None
    if args.action == "show":
        return _emit(args, "catalog show", "ok", {"entry": spec.to_json()}, spec.describe())
    if spec.group == "table2":
        rep = mom.check_orthogonality(spec.evaluated(), args.n, spec.name)
    else:
        rep = catalog.compare(args.name, args.n)
    return _emit_report(args, "catalog compare", rep)


def cmd_arrangements(args) -> int:
    if args.action == "count":
        if args.method == "all":
            counts = {n: arr.count_all_methods(args.k, n) for n in range(args.n + 1)}
            agree = all(len(set(c.values())) == 1 for c in counts.values())
            text = "\n".join(f"A_{args.k}({n}) = " + ", ".join(f"{m}: {v}" for m, v in c.items())
                             for n, c in counts.items())
            return _emit(args, "arrangements count", "ok" if agree else "mismatch",
                         {"k": args.k, "counts": counts}, text)
        vals = [arr.count(args.k, n, args.method) for n in range(args.n + 1)]
        return _emit(args, "arrangements count", "ok", {"k": args.k, "counts": vals},
                     ", ".join(map(str, vals)))
    if args.action == "enumerate":
        rows = []
        for a in arr.enumerate_arrangements(args.k, args.n, bound=args.bound):
            rows.append({"permutation": list(a.pi.word), "coloring": a.phi,
                         "derangement_form": list(arr.to_form(a, "derangement").word),
                         "permutation_form": list(arr.to_form(a, "permutation").word)})
        text = "\n".join(
            f"{' '.join(map(str, r['permutation']))}  phi={r['coloring']}  "
            f"der: {' '.join(map(str, r['derangement_form']))}  "
            f"perm: {' '.join(map(str, r['permutation_form']))}" for r in rows)
        return _emit(args, "arrangements enumerate", "ok", {"count": len(rows), "items": rows},
                     text + f"\n{len(rows)} arrangements")
    pat = PatternSpec.parse(args.pattern, "classical")
    hist = arr.avoiders(args.k, args.n, pat, refine_by_negatives=True)
    text = (f"{sum(hist.values())} permutation forms of {args.k}-arrangements of [{args.n}] "
            f"avoid {pat}\nby number of negative letters: {hist}")
    return _emit(args, "arrangements avoid", "ok",
                 {"count": sum(hist.values()), "by_negatives": hist}, text)


def cmd_compare_seq(args) -> int:
    ref = read_bfile(args.file)
    params = _assignment(args)
    z = parse_poly(args.z_factor) if args.z_factor else None
    N = len(ref) - 1 if args.n is None else min(args.n, len(ref) - 1)
    ms = moments(params, N, z_factor=z, symbolic_bound=max(args.bound, N),
                 numeric_bound=max(DEFAULT_NUMERIC_BOUND, N))
    rep = Report(f"expansion against {args.file}")
    for i in range(N + 1):
        exp = plain(ref[i] if isinstance(ref[i], Poly) else Poly.const(ref[i]))
        act = plain(ms[i] if isinstance(ms[i], Poly) else Poly.const(ms[i]))
        rep.add(f"m_{i}", exp == act, exp, act)
    return _emit_report(args, "compare-seq", rep)


# parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # subcommands accept --json too, without resetting a global --json
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON (schema 1)")

    parser = argparse.ArgumentParser(
        prog="permfrac",
        description="Permutation statistics, labeled Motzkin paths and the "
                    "fourteen-parameter continued fraction.")
    parser.add_argument("--json", action="store_true", help="emit JSON (schema 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="statistics and per-index profiles")
    p.add_argument("perm")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("path", parents=[common], help="labeled Motzkin path of a permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("unpath", parents=[common], help="permutation of a labeled path")
    p.add_argument("path", nargs="*", help="encoding such as 'U[c^0 d^0] D[h^0 l^0]'")
    p.add_argument("--from-json", metavar="FILE")
    p.set_defaults(func=cmd_unpath)

    p = sub.add_parser("expand", parents=[common], help="moments m_0..m_N")
    _add_param_options(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--symbolic", action="store_true",
                   help="keep unset parameters symbolic (the default; excludes --default)")
    p.add_argument("--z-factor", metavar="POLY", help="substitute z -> z*POLY")
    p.add_argument("--at", action="append", default=[], metavar="NAME=VALUE",
                   help="also print the moments evaluated here; '*=1' sets every variable")
    p.add_argument("--bound", type=int, default=DEFAULT_SYMBOLIC_BOUND,
                   help="largest order allowed for symbolic expansion")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="run a verification report")
    p.add_argument("what", choices=["main", "colored", "arrangements", "conjectures"])
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--bound", type=int, default=DEFAULT_SYMBOLIC_BOUND)
    p.add_argument("--inv-n", type=int, default=8,
                   help="order for the [n]_q! check of the inversion law (colored)")
    p.add_argument("--no-variants", action="store_true",
                   help="skip the alternative readings of the last conjecture")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hankel", parents=[common], help="Hankel determinants")
    _add_param_options(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--closed-form", action="store_true",
                   help="compare with the product formula")
    p.add_argument("--sequence", metavar="LIST", help="comma-separated sequence instead of params")
    p.add_argument("--bound", type=int, default=DEFAULT_SYMBOLIC_BOUND)
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("classify", parents=[common], help="moment-sequence classification")
    _add_param_options(p)
    p.add_argument("--scan", type=int, default=100, help="number of beta_n inspected")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orthopoly", parents=[common], help="orthogonal polynomials P_0..P_N")
    _add_param_options(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--variable", default="X")
    p.add_argument("--check", action="store_true", help="also verify orthogonality")
    p.set_defaults(func=cmd_orthopoly)

    p = sub.add_parser("catalog", parents=[common], help="named specializations")
    p.add_argument("action", choices=["list", "show", "compare"])
    p.add_argument("name", nargs="?")
    p.add_argument("-n", type=int, default=10)
    p.add_argument("--group", choices=["table1", "table2", "corollary"])
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("arrangements", parents=[common], help="k-arrangements")
    p.add_argument("action", choices=["count", "enumerate", "avoid"])
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--method", default="recursion", choices=list(arr.COUNT_METHODS) + ["all"])
    p.add_argument("--pattern", default="312", help="classical length-3 pattern (avoid)")
    p.add_argument("--bound", type=int, default=arr.DEFAULT_ARRANGEMENT_BOUND)
    p.set_defaults(func=cmd_arrangements)

    p = sub.add_parser("compare-seq", parents=[common], help="diff an expansion against a b-file")
    p.add_argument("file")
    _add_param_options(p)
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--z-factor", metavar="POLY")
    p.add_argument("--bound", type=int, default=DEFAULT_SYMBOLIC_BOUND)
    p.set_defaults(func=cmd_compare_seq)
    return parser


_VERIFY_DEFAULT_N = {"main": 6, "colored": 5, "arrangements": 8, "conjectures": 6}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.command == "verify" and args.n is None:
        args.n = _VERIFY_DEFAULT_N[args.what]
    try:
        return args.func(args)
    except (UsageError, PathError, BFileError, PolyError, ValueError, KeyError,
            OSError) as exc:
        message = str(exc)
        if getattr(args, "json", False):
            doc = {"schema": SCHEMA, "command": args.command, "status": "error",
                   "error": message}
            if isinstance(exc, PathError):
                doc["path_error"] = {"reason": exc.reason, "position": exc.position}
            print(json.dumps(doc, indent=2))
        else:
            print(f"permfrac: error: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
