"""Command-line entry point: ``schemefusion <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators as gen
from .amorphic import ORACLE_LIMIT, brute_force_amorphic, canonical_check
from .audit import default_catalog, directory_catalog, verify_paper
from .errors import InputError, SchemeError
from .exact import RatMatrix
from .fusegraph import fusing_graph, graph_profile, to_dot
from .fusion import IndexPartition, bm_check, fuse_relations, fusing_pairs
from .io import format_eigen, format_rational, format_scheme, load
from .scheme import RelationTable, spectral_from_P, spectrum, validate_table
from .srg import idempotent_types, relation_types

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class UsageError(InputError):
    pass


def _spectral(obj):
    if isinstance(obj, RelationTable):
        return spectrum(validate_table(obj))
    return spectral_from_P(obj)


def _matrix_lines(M: RatMatrix) -> list[str]:
    cells = [[format_rational(x) for x in row] for row in M.rows()]
    width = max(len(c) for row in cells for c in row)
    return ["  " + " ".join(c.rjust(width) for c in row) for row in cells]


def _label(lab) -> str:
    return ",".join(map(str, sorted(lab)))


def path_order(G) -> list:
    """Vertices of a path graph from its smaller end to the other."""
    if len(G.vertices) == 1:
        return list(G.vertices)
    ends = [v for v in G.vertices if G.degree(v) == 1]
    order, prev = [ends[0]], None
    while len(order) < len(G.vertices):
        nxt = [u for u in G.neighbors(order[-1]) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def cmd_validate(args):
    obj = load(args.file)
    if isinstance(obj, RelationTable):
        core = validate_table(obj)
        print(f"ok: v={core.v} d={core.d} valencies={list(core.valencies)}")
        return EXIT_OK
    spec = spectral_from_P(obj)
    fails = spec.invariant_violations()
    for f in fails:
        print(f"violation: {f}")
    if fails:
        return EXIT_VIOLATION
    print(f"ok: eigenmatrix v={spec.v} d={spec.d}")
    return EXIT_OK


def cmd_spectrum(args):
    spec = _spectral(load(args.file))
    if args.json:
        fmt = lambda M: [[format_rational(x) for x in row] for row in M.rows()]  # noqa: E731
        print(json.dumps({"v": spec.v, "d": spec.d, "P": fmt(spec.P), "Q": fmt(spec.Q),
                          "multiplicities": list(spec.multiplicities)}, indent=2))
        return EXIT_OK
    print(f"v={spec.v} d={spec.d}")
    print("P:")
    print("\n".join(_matrix_lines(spec.P)))
    print("Q:")
    print("\n".join(_matrix_lines(spec.Q)))
    print("multiplicities:", " ".join(map(str, spec.multiplicities)))
    return EXIT_OK


def cmd_fuse(args):
    obj = load(args.file)
    if isinstance(obj, RelationTable):
        d = obj.d
        pi = IndexPartition.parse(args.parts, d)
        fused, outcome = fuse_relations(obj, pi)
        text = format_scheme(fused, comment=f"fusion {pi} of {Path(args.file).name}")
    else:
        pi = IndexPartition.parse(args.parts, obj.nrows - 1)
        outcome = bm_check(obj, pi)
        text = format_eigen(outcome.fusedP, comment=f"fusion {pi} of {Path(args.file).name}")
    print(f"fusion {pi}: ok, dual partition {outcome.rho}")
    print("\n".join(_matrix_lines(outcome.fusedP)))
    if args.output:
        Path(args.output).write_text(text)
    return EXIT_OK


def cmd_pairs(args):
    spec = _spectral(load(args.file))
    M = spec.Q if args.dual else spec.P
    for (i, j), (a, b) in fusing_pairs(M):
        print(f"{i},{j} <-> {a},{b}")
    return EXIT_OK


def cmd_graph(args):
    spec = _spectral(load(args.file))
    G = fusing_graph(spec.Q if args.kind == "idempotents" else spec.P)
    prof = graph_profile(G)
    if prof["isPath"]:
        print("path " + "-".join(_label(v) for v in path_order(G)))
    else:
        edges = " ".join(f"{_label(a)}-{_label(b)}" for a, b in G.edge_list())
        shape = "connected" if prof["connected"] else "disconnected"
        print(f"{shape} graph, {prof['edgeCount']} edges: {edges}".rstrip())
    if args.dot:
        Path(args.dot).write_text(to_dot(G, name=args.kind))
    return EXIT_OK


def cmd_amorphic(args):
    spec = _spectral(load(args.file))
    canon = canonical_check(spec.P).amorphic
    if not args.oracle:
        print(f"amorphic: {'yes' if canon else 'no'} (canonical)")
        return EXIT_OK
    if spec.d > ORACLE_LIMIT:
        raise UsageError(f"--oracle needs d <= {ORACLE_LIMIT}, got d={spec.d}")
    orc = brute_force_amorphic(spec.P)
    if orc.amorphic != canon:
        print(f"amorphic: deciders disagree (canonical={canon}, oracle={orc.amorphic})")
        return EXIT_VIOLATION
    answer = "yes" if canon else "no"
    tail = "" if canon else f", first failing partition {orc.failing}"
    print(f"amorphic: {answer} (canonical+oracle agree{tail})")
    return EXIT_OK


def cmd_classify(args):
    spec = _spectral(load(args.file))
    for title, types in (("relation", relation_types(spec.P)), ("idempotent", idempotent_types(spec.Q))):
        for i in range(1, spec.d + 1):
            tags = types.get(i)
            desc = "not strongly regular" if tags is None else (
                ", ".join(sorted(map(str, tags))) or "strongly regular, untyped")
            print(f"{title} {i}: {desc}")
    return EXIT_OK


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def cmd_gen(args):
    kind, rest = args.kind, args.params
    need = {"complete": 1, "chain": 1, "latin": 2, "johnson3": 1, "wreath": 2}[kind]
    if len(rest) != need:
        raise UsageError(f"gen {kind} takes {need} argument(s), got {len(rest)}")
    if kind == "wreath":
        inner = load(rest[1])
        if not isinstance(inner, RelationTable):
            raise UsageError("wreath needs a .scheme file for the inner scheme")
        table = gen.wreath(_ints(rest[0])[0], inner)
        comment = f"wreath {rest[0]} {Path(rest[1]).name}"
    else:
        ps = _ints(rest[0]) if kind == "chain" else tuple(_ints(x)[0] for x in rest)
        table = gen.build(gen.GeneratorSpec(kind, ps))
        comment = gen.GeneratorSpec(kind, ps).name()
    Path(args.output).write_text(format_scheme(table, comment=comment))
    print(f"wrote {args.output}: v={table.v} d={table.d}")
    return EXIT_OK


def cmd_verify(args):
    catalog = [] if args.no_builtin else default_catalog()
    if args.catalog:
        if not Path(args.catalog).is_dir():
            raise UsageError(f"catalog directory {args.catalog} not found")
        catalog += directory_catalog(args.catalog)
    report = verify_paper(catalog, oracle=True, jobs=args.jobs)
    text = json.dumps(report, indent=2) + "\n"
    if args.report:
        Path(args.report).write_text(text)
    if args.figures:
        from .plotting import render_report
        render_report(report, args.figures)
    s = report["summary"]
    print("=== verify-paper ===")
    for rec in report["schemes"]:
        if rec["status"] == "error":
            print(f"ERROR {rec['id']}: {rec['errorType']}: {rec['error']}")
        elif rec["violations"]:
            bad = sorted({c["name"] for c in rec["checks"] if not c["ok"]})
            print(f"FAIL  {rec['id']}: {', '.join(bad)}")
    print(f"schemes={s['schemes']} errors={s['errors']} checks={s['totalChecks']} "
          f"partitionChecks={s['partitionChecks']} violations={s['violations']}")
    print("=== end ===")
    return EXIT_OK if s["violations"] == 0 and s["errors"] == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schemefusion",
                                description="Exact fusion analysis of symmetric association schemes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a relation table or eigenmatrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("spectrum", help="print P, Q and multiplicities")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("fuse", help="fuse relations by a partition such as 1,2|3")
    s.add_argument("file")
    s.add_argument("--parts", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_fuse)

    s = sub.add_parser("pairs", help="list fusing pairs")
    s.add_argument("file")
    s.add_argument("--dual", action="store_true", help="pairs of idempotents instead")
    s.set_defaults(func=cmd_pairs)

    s = sub.add_parser("graph", help="fusing graph shape")
    s.add_argument("file")
    s.add_argument("--kind", choices=("relations", "idempotents"), default="relations")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("amorphic", help="decide amorphicity")
    s.add_argument("file")
    s.add_argument("--oracle", action="store_true", help="also try every partition")
    s.set_defaults(func=cmd_amorphic)

    s = sub.add_parser("classify", help="strongly regular types of relations and idempotents")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("gen", help="write a generated scheme")
    s.add_argument("kind", choices=("complete", "wreath", "chain", "latin", "johnson3"))
    s.add_argument("params", nargs="+")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify-paper", help="run the full verification battery")
    s.add_argument("--catalog", help="directory of extra .scheme/.eigen files")
    s.add_argument("--no-builtin", action="store_true", help="skip the generated catalog")
    s.add_argument("--report", help="write the JSON report here")
    s.add_argument("--figures", help="render PNG figures into this directory")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SchemeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
