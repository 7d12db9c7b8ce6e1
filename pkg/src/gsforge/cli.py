"""Command-line front end.

Commands: classify, compile, orbit, db-build, verify, census.  Results go to
stdout (machine-parseable with --format json), diagnostics to stderr.  Exit
codes: 0 ok, 1 verification failure, 2 usage, 3 resource budget exhausted,
4 integrity failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classdb, compiler
from .errors import (
    CapabilityError,
    GraphFormatError,
    IntegrityError,
    ResourceBudgetError,
)
from .graphs import (
    Graph,
    format_edge_list,
    generate_connected_graphs,
    parse_edge_list,
    parse_graph6,
    write_graph6,
)
from .orbits import (
    DEFAULT_MEMBER_BUDGET,
    enumerate_orbit,
    optimal_representatives,
    two_colorable_member,
)

EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTEGRITY = 4


def _die(code: int, message: str) -> int:
    print(f"gsforge: {message}", file=sys.stderr)
    return code


def _read_graph(args) -> Graph:
    text = args.graph
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
    if text is None:
        raise GraphFormatError("no graph given (positional argument or --file)")
    fmt = args.input_format
    if fmt == "auto":
        fmt = "edgelist" if ("-" in text or "," in text) else "graph6"
    if fmt == "graph6":
        g = parse_graph6(text)
        if args.n is not None and args.n != g.n:
            raise GraphFormatError(f"--n {args.n} conflicts with graph6 n={g.n}")
        return g
    return parse_edge_list(text, args.n)


def _db_path(args, n: int) -> str:
    if args.db:
        return args.db
    base = os.environ.get("GSF_DB_DIR", ".")
    return os.path.join(base, f"gsdb_n{n}.jsonl")


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="edge list 'i-j,k-l,...' or graph6 string")
    p.add_argument("--file", help="read the graph from a file instead")
    p.add_argument("--input-format", choices=("auto", "edgelist", "graph6"), default="auto")
    p.add_argument("--n", type=int, help="vertex count override (trailing isolated vertices)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_MEMBER_BUDGET,
                   help="orbit member budget")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gsforge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the LC-class record of a graph")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--db", help="database file (default $GSF_DB_DIR/gsdb_n<n>.jsonl)")

    p = sub.add_parser("compile", help="compile a verified preparation circuit")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--strategy", choices=compiler.STRATEGIES, default="minE")

    p = sub.add_parser("orbit", help="summarize a graph's LC orbit")
    _add_graph_args(p)
    _add_common(p)

    p = sub.add_parser("db-build", help="build and save the LC-class database")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="output file (default $GSF_DB_DIR/gsdb_n<n>.jsonl)")
    p.add_argument("--db", help=argparse.SUPPRESS)  # alias of --out
    p.add_argument("--source", help="graph6 census file (default: internal generator)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--allow-large", action="store_true",
                   help="permit n >= 10 batch builds")
    p.add_argument("--checkpoint-dir", help="directory for resumable progress")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("verify", help="check a circuit JSON against a target graph")
    _add_graph_args(p)
    p.add_argument("--circuit", required=True, help="circuit JSON file ('-' for stdin)")

    p = sub.add_parser("census", help="emit or ingest graph6 census lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="from_file",
                   help="re-emit this graph6 file canonicalized and deduplicated")
    return ap


def _cmd_classify(args) -> int:
    g = _read_graph(args)
    records = classdb.load(_db_path(args, g.n))
    rec = classdb.classify(g, records)
    if args.format == "json":
        print(json.dumps(classdb._record_to_dict(rec), separators=(",", ":")))
        return 0
    print(f"class {rec.class_id} of n={rec.n}")
    print(f"  orbit size |LC| = {rec.orbit_size}")
    print(f"  min edges |E| = {rec.min_edges}")
    print(f"  Schmidt measure in [{rec.schmidt_lower}, {rec.schmidt_upper}]")
    print(f"  rank indexes RI = {list(map(list, rec.rank_indexes))}")
    print(f"  two-colorable member: {'yes' if rec.two_colorable else 'no'}")
    f = rec.min_edges_first
    print(f"  min(|E|, chi', #) = ({f.edge_count}, {f.chromatic_index}, {f.count})  {f.colored_classes}")
    s = rec.min_chi_first
    if s is None:
        print("  min(chi', |E|, #) = (coincident)")
    else:
        print(f"  min(chi', |E|, #) = ({s.chromatic_index}, {s.edge_count}, {s.count})  {s.colored_classes}")
    return 0


def _cmd_compile(args) -> int:
    g = _read_graph(args)
    circuit = compiler.compile_circuit(g, args.strategy, member_budget=args.budget)
    if args.format == "json":
        print(compiler.emit_json(circuit))
        return 0
    print(f"strategy {circuit.strategy}: {circuit.cz_count} CZs, depth {circuit.depth}"
          f" (standard: {circuit.standard_cz_count} CZs, depth {circuit.standard_depth})")
    sys.stdout.write(compiler.emit_text(circuit))
    return 0


def _cmd_orbit(args) -> int:
    g = _read_graph(args)
    orbit = enumerate_orbit(g, member_budget=args.budget)
    report = optimal_representatives(orbit)
    bip = two_colorable_member(orbit)
    first, second = report.min_edges_first, report.min_chi_first
    if args.format == "json":
        doc = {
            "orbit_size": orbit.size,
            "min_edges_first": {
                "edges": first.edge_count, "chi": first.chromatic_index,
                "count": first.count, "rep": format_edge_list(first.rep),
            },
            "min_chi_first": None if second is None else {
                "edges": second.edge_count, "chi": second.chromatic_index,
                "count": second.count, "rep": format_edge_list(second.rep),
            },
            "two_colorable": bip is not None,
        }
        print(json.dumps(doc, separators=(",", ":")))
        return 0
    print(f"orbit size |LC| = {orbit.size}")
    print(f"  min(|E|, chi', #) = ({first.edge_count}, {first.chromatic_index}, {first.count})"
          f"  rep: {format_edge_list(first.rep) or '(edgeless)'}")
    if second is None:
        print("  min(chi', |E|, #) = (coincident)")
    else:
        print(f"  min(chi', |E|, #) = ({second.chromatic_index}, {second.edge_count}, {second.count})"
              f"  rep: {format_edge_list(second.rep)}")
    print(f"  two-colorable member: {'yes' if bip is not None else 'no'}")
    return 0


def _cmd_db_build(args) -> int:
    progress = None if args.quiet else (lambda m: print(f"gsforge: {m}", file=sys.stderr))
    records = classdb.build_database(
        args.n,
        graph6_path=args.source,
        workers=max(1, args.workers),
        allow_large=args.allow_large,
        checkpoint_dir=args.checkpoint_dir,
        progress=progress,
    )
    out = args.out or args.db
    if not out:
        base = os.environ.get("GSF_DB_DIR", ".")
        os.makedirs(base, exist_ok=True)
        out = os.path.join(base, f"gsdb_n{args.n}.jsonl")
    classdb.save(records, out)
    print(f"{len(records)} classes -> {out}")
    return 0


def _cmd_verify(args) -> int:
    g = _read_graph(args)
    if args.circuit == "-":
        text = sys.stdin.read()
    else:
        with open(args.circuit, "r", encoding="utf-8") as fh:
            text = fh.read()
    circuit = compiler.parse_json(text)
    if circuit.n != g.n:
        return _die(EXIT_VERIFY, f"circuit n={circuit.n} does not match target n={g.n}")
    if not circuit.layers_legal():
        return _die(EXIT_VERIFY, "illegal layer: a qubit is used twice in one time step")
    if compiler.verify(circuit, g):
        print("OK")
        return 0
    return _die(EXIT_VERIFY, "circuit does not prepare the target graph state")


def _cmd_census(args) -> int:
    if args.from_file:
        seen = set()
        from .graphs import canonical_form

        with open(args.from_file, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                g = parse_graph6(line)
                if g.n != args.n:
                    raise IntegrityError(f"census line has n={g.n}, expected {args.n}")
                seen.add(canonical_form(g)[0])
        from .graphs import adjacency_key

        for g in sorted(seen, key=adjacency_key):
            print(write_graph6(g))
        return 0
    for g in generate_connected_graphs(args.n):
        print(write_graph6(g))
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "compile": _cmd_compile,
    "orbit": _cmd_orbit,
    "db-build": _cmd_db_build,
    "verify": _cmd_verify,
    "census": _cmd_census,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return EXIT_USAGE if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except GraphFormatError as exc:
        return _die(EXIT_USAGE, str(exc))
    except CapabilityError as exc:
        return _die(EXIT_USAGE, str(exc))
    except ResourceBudgetError as exc:
        return _die(EXIT_RESOURCE, str(exc))
    except IntegrityError as exc:
        return _die(EXIT_INTEGRITY, str(exc))
    except FileNotFoundError as exc:
        return _die(EXIT_USAGE, str(exc))
    except ValueError as exc:
        return _die(EXIT_USAGE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
