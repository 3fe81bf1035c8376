"""
Command-line front end.

    polyext ext T^2 S^4 --format json
    polyext table ab-sym --max-n 9
    polyext stable Lambda^3 --mode structural
    polyext groupcoh S3 --max-degree 5
    polyext check --all

Exit codes: 0 success, 1 usage or parse error, 2 unsupported pair or
functor, 3 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .algebra import FgAbGroup, GradedAbGroup
from .api import (
    AB,
    ExtResult,
    Method,
    S,
    cross_check,
    cross_check_suite,
    default_max_degree,
    ext,
    parse_functor,
    stable_cohomology,
)
from .complexes import homology
from .errors import (
    CrossCheckMismatch,
    InvalidParameter,
    OnlyOneMethod,
    ParseError,
    UnsupportedFunctor,
    UnsupportedPair,
)
from .groupcoh import (
    bar_cochain_complex,
    closed_form_cohomology,
    named_group,
    named_module,
)

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_MISMATCH = 0, 1, 2, 3

EXT_RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "polyext Ext result",
    "type": "object",
    "required": ["query", "grading", "degrees", "truncated_above", "periodicity", "method", "warnings"],
    "additionalProperties": False,
    "properties": {
        "query": {
            "type": "object",
            "required": ["source", "target", "rational", "max_degree"],
            "properties": {
                "source": {"type": "string"},
                "target": {"type": "string"},
                "rational": {"type": "boolean"},
                "max_degree": {"type": "integer", "minimum": 0},
                "method": {"type": "string"},
            },
        },
        "grading": {"const": "ext"},
        "degrees": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "rank", "torsion"],
                "additionalProperties": False,
                "properties": {
                    "i": {"type": "integer"},
                    "rank": {"type": "integer", "minimum": 0},
                    "torsion": {"type": "array", "items": {"type": "integer", "minimum": 2}},
                },
            },
        },
        "truncated_above": {"type": ["integer", "null"]},
        "periodicity": {"type": ["string", "null"]},
        "method": {"enum": ["closed", "chain", "both"]},
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _degrees_json(g: GradedAbGroup) -> list[dict]:
    return [{"i": d, "rank": a.rank, "torsion": list(a.torsion)} for d, a in g]


def graded_from_json(degrees: list[dict], truncated_above=None) -> GradedAbGroup:
    return GradedAbGroup.from_dict(
        {e["i"]: FgAbGroup.from_orders(e["rank"], e["torsion"]) for e in degrees}, truncated_above
    )


def result_to_json(r: ExtResult, max_degree: int, requested: str = "auto") -> dict:
    return {
        "query": {
            "source": str(r.source),
            "target": str(r.target),
            "rational": r.rational,
            "max_degree": max_degree,
            "method": requested,
        },
        "grading": "ext",
        "degrees": _degrees_json(r.value),
        "truncated_above": r.value.truncated_above,
        "periodicity": r.periodicity,
        "method": r.method.value,
        "warnings": list(r.warnings),
    }


def result_from_json(data: dict) -> ExtResult:
    q = data["query"]
    return ExtResult(
        parse_functor(q["source"]),
        parse_functor(q["target"]),
        graded_from_json(data["degrees"], data["truncated_above"]),
        Method(data["method"]),
        q["rational"],
        data["periodicity"],
        tuple(data["warnings"]),
    )


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _degrees_csv(g: GradedAbGroup, lead: list | None = None) -> list[list]:
    lead = lead or []
    return [lead + [d, a.rank, " ".join(map(str, a.torsion))] for d, a in g]


# ---------------------------------------------------------------------------


def _cmd_ext(args) -> tuple[int, str]:
    F, G = parse_functor(args.source), parse_functor(args.target)
    D = args.max_degree
    r = ext(F, G, rational=args.rational, max_degree=D, method=args.method)
    if args.format == "json":
        return EXIT_OK, json.dumps(result_to_json(r, D, args.method), indent=2)
    if args.format == "csv":
        return EXIT_OK, _csv([["i", "rank", "torsion"]] + _degrees_csv(r.value))
    lines = [f"Ext^*({F}, {G}) = {r.format()}", f"method: {r.method.value}"]
    if r.periodicity:
        lines.append(f"beyond degree {r.value.truncated_above}: {r.periodicity}")
    lines += [f"warning: {w}" for w in r.warnings]
    return EXIT_OK, "\n".join(lines)


def _cmd_table(args) -> tuple[int, str]:
    if args.which != "ab-sym":
        raise UsageError(f"unknown table {args.which!r}; available: ab-sym")
    if args.max_n < 1:
        raise InvalidParameter("--max-n must be at least 1")
    results = [(n, ext(AB, S(n), max_degree=args.max_degree)) for n in range(1, args.max_n + 1)]
    if args.format == "json":
        return EXIT_OK, json.dumps([result_to_json(r, args.max_degree) for _, r in results], indent=2)
    if args.format == "csv":
        rows = [["n", "i", "rank", "torsion"]]
        for n, r in results:
            rows += _degrees_csv(r.value, [n])
        return EXIT_OK, _csv(rows)
    lines = ["n  Ext^i(ab, S^n)"]
    lines += [f"{n}  {r.format()}" for n, r in results]
    return EXIT_OK, "\n".join(lines)


def _cmd_stable(args) -> tuple[int, str]:
    F = parse_functor(args.functor)
    r = stable_cohomology(F, args.mode)
    if args.format == "json":
        data = {"query": {"functor": str(F), "mode": args.mode}}
        if args.mode == "rational":
            data["degrees"] = [{"i": d, "dimension": a.rank} for d, a in r.value]
        else:
            data["summands"] = [
                {"shift": s.shift, "space": s.space, "twist": s.twist, "stabilizer": list(s.stabilizer)}
                for s in r.summands
            ]
        return EXIT_OK, json.dumps(data, indent=2, ensure_ascii=False)
    if args.format == "csv":
        if args.mode == "rational":
            return EXIT_OK, _csv([["i", "dimension"]] + [[d, a.rank] for d, a in r.value])
        return EXIT_OK, _csv([["shift", "space", "twist"]] + [[s.shift, s.space, s.twist] for s in r.summands])
    return EXIT_OK, f"H^*_s(aut; {F}) =\n{r.format()}"


# Bar complexes above this many top-degree cochains are slow in pure Python.
BAR_SIZE_LIMIT = 20000


def _cmd_groupcoh(args) -> tuple[int, str]:
    G = named_group(args.group)
    M = named_module(G, args.coeff)
    D = args.max_degree
    method = args.method
    closed = closed_form_cohomology(G.name, args.coeff, D)
    if method == "auto":
        small = (G.order - 1) ** (D + 1) <= BAR_SIZE_LIMIT
        method = "bar" if small or closed is None else "closed"
    if method == "closed":
        if closed is None:
            raise OnlyOneMethod(f"no closed form for H^*({G.name}; {args.coeff})")
        value = closed
    else:
        value = homology(bar_cochain_complex(G, M, D))
    if args.format == "json":
        data = {
            "query": {"group": G.name, "coeff": args.coeff, "max_degree": D},
            "grading": "cohomology",
            "degrees": _degrees_json(value),
            "truncated_above": value.truncated_above,
            "method": method,
        }
        return EXIT_OK, json.dumps(data, indent=2)
    if args.format == "csv":
        return EXIT_OK, _csv([["k", "rank", "torsion"]] + _degrees_csv(value))
    return EXIT_OK, f"H^*({G.name}; {args.coeff}) = {value}\nmethod: {method}"


def _cmd_check(args) -> tuple[int, str]:
    if args.all:
        if args.source or args.target:
            raise UsageError("check: give either --all or a pair, not both")
        reports = cross_check_suite(max_n=args.max_n, max_degree=args.max_degree)
    else:
        if not (args.source and args.target):
            raise UsageError("check: give --all or two functors")
        reports = [cross_check(parse_functor(args.source), parse_functor(args.target), args.max_degree, strict=False)]
    lines = []
    bad = 0
    for rep in reports:
        status = "ok" if rep.ok else f"MISMATCH in degree {rep.mismatch}"
        lines.append(f"Ext({rep.source}, {rep.target}) through degree {rep.max_degree}: {status}")
        if args.verbose or not rep.ok:
            lines += rep.lines()
        bad += not rep.ok
    lines.append(f"{len(reports) - bad} of {len(reports)} pairs agree")
    return (EXIT_MISMATCH if bad else EXIT_OK), "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    D = default_max_degree()
    p = _Parser(prog="polyext", description="Ext groups between polynomial functors on free groups.")
    p.add_argument("--out", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, formats=True):
        sp.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")
        if formats:
            sp.add_argument("--format", choices=["text", "json", "csv"], default="text")

    e = sub.add_parser("ext", help="compute Ext^*(F, G)")
    e.add_argument("source")
    e.add_argument("target")
    e.add_argument("--rational", action="store_true")
    e.add_argument("--max-degree", type=int, default=D)
    e.add_argument("--method", choices=["auto", "closed", "chain", "both"], default="auto")
    common(e)
    e.set_defaults(func=_cmd_ext)

    t = sub.add_parser("table", help="reproduce a table of Ext groups")
    t.add_argument("which", choices=["ab-sym"])
    t.add_argument("--max-n", type=int, default=9)
    t.add_argument("--max-degree", type=int, default=D)
    common(t)
    t.set_defaults(func=_cmd_table)

    s = sub.add_parser("stable", help="stable cohomology of aut(F_n)")
    s.add_argument("functor")
    s.add_argument("--mode", choices=["rational", "structural"], default="rational")
    common(s)
    s.set_defaults(func=_cmd_stable)

    g = sub.add_parser("groupcoh", help="cohomology of a symmetric group")
    g.add_argument("group", choices=["S2", "S3", "s2", "s3"])
    g.add_argument("--coeff", choices=["trivial", "sign"], default="trivial")
    g.add_argument("--max-degree", type=int, default=D)
    g.add_argument("--method", choices=["auto", "bar", "closed"], default="auto")
    common(g)
    g.set_defaults(func=_cmd_groupcoh)

    c = sub.add_parser("check", help="compare closed forms with chain-level models")
    c.add_argument("source", nargs="?")
    c.add_argument("target", nargs="?")
    c.add_argument("--all", action="store_true")
    c.add_argument("--max-degree", type=int, default=10)
    c.add_argument("--max-n", type=int, default=5)
    c.add_argument("-v", "--verbose", action="store_true")
    common(c, formats=False)
    c.set_defaults(func=_cmd_check)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_degree", 0) < 0:
            raise InvalidParameter("--max-degree must be non-negative")
        code, text = args.func(args)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except (UsageError, ParseError, InvalidParameter) as e:
        print(str(e), file=stderr)
        return EXIT_USAGE
    except (UnsupportedPair, UnsupportedFunctor, OnlyOneMethod) as e:
        print(str(e), file=stderr)
        return EXIT_UNSUPPORTED
    except CrossCheckMismatch as e:
        print(str(e), file=stderr)
        return EXIT_MISMATCH
    text = text.rstrip("\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
