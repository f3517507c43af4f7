"""Command-line front end: REPL, batch subcommands, and the server.

Every subcommand is a thin adapter over the library: output is the
corresponding library call's result, rendered as an aligned table or,
with --json, as one JSON object. Exit codes: 0 success, 1 user error,
2 internal error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import layouts as layout_module
from .engine import GraphEngine
from .errors import GrafionError, QueryError
from .graph import PropertyGraph
from .query import RowSet, run_query
from .query.executor import (
    EdgeSnapshot,
    NodeSnapshot,
    PathSnapshot,
    cell_to_jsonable,
)
from .server import GraphServer
from .storage import load_graph, save_graph, write_layout_file
from .algorithms import (
    betweenness_centrality,
    closeness_centrality,
    connected_components,
    degree_centrality,
    dijkstra,
    eigenvector_centrality,
    louvain,
    pagerank,
    weakly_connected_components,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are user errors: exit 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _render_cell(cell) -> str:
    if cell is None:
        return "null"
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, NodeSnapshot):
        labels = "".join(f":{l}" for l in cell.labels)
        props = ", ".join(f"{k}: {_render_cell(v)}" for k, v in cell.properties.items())
        inner = " ".join(part for part in (labels, "{" + props + "}" if props else "") if part)
        return f"({inner})"
    if isinstance(cell, EdgeSnapshot):
        props = ", ".join(f"{k}: {_render_cell(v)}" for k, v in cell.properties.items())
        body = f":{cell.type}" + (f" {{{props}}}" if props else "")
        return f"[{body}]"
    if isinstance(cell, PathSnapshot):
        return "->".join(_render_cell(n) for n in cell.nodes)
    if isinstance(cell, list):
        return "[" + ", ".join(_render_cell(v) for v in cell) + "]"
    if isinstance(cell, str):
        return cell
    return repr(cell)


def format_table(result: RowSet) -> str:
    lines = []
    if result.columns:
        rendered = [[_render_cell(cell) for cell in row] for row in result.rows]
        widths = [len(c) for c in result.columns]
        for row in rendered:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        header = " | ".join(c.ljust(widths[i]) for i, c in enumerate(result.columns))
        lines.append(header)
        lines.append("-+-".join("-" * w for w in widths))
        for row in rendered:
            lines.append(" | ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
        lines.append(f"{len(result.rows)} row(s)")
    counters = {k: v for k, v in result.summary.as_dict().items() if v}
    if counters:
        lines.append(", ".join(f"{k}: {v}" for k, v in counters.items()))
    if not lines:
        lines.append("0 row(s)")
    return "\n".join(lines)


def result_to_json(result: RowSet) -> dict:
    return {
        "columns": result.columns,
        "rows": [[cell_to_jsonable(cell) for cell in row] for row in result.rows],
        "summary": result.summary.as_dict(),
    }


def _load_state(args, allow_missing: bool = False) -> PropertyGraph:
    path = getattr(args, "graph", None)
    if path and (os.path.exists(path) or not allow_missing):
        return load_graph(path, kind=args.kind)
    return PropertyGraph(args.kind)


def _parse_params(pairs) -> dict:
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise GrafionError(f"--param takes key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
    return params


# -- subcommands ---------------------------------------------------------------


def cmd_run(args) -> int:
    g = _load_state(args, allow_missing=True)  # a fresh state file is created on write
    result = run_query(g, args.query, _parse_params(args.param),
                       import_dir=args.import_dir)
    if args.json:
        print(json.dumps(result_to_json(result), sort_keys=True))
    else:
        print(format_table(result))
    if args.graph and any(result.summary.as_dict().values()):
        save_graph(g, args.graph)
    return 0


def cmd_import_csv(args) -> int:
    from .storage import import_csv_all

    g = import_csv_all(args.file, delimiter=args.delimiter,
                       use_types=args.use_types, kind=args.kind,
                       batch_size=args.batch_size)
    save_graph(g, args.graph)
    payload = {"nodes": g.node_count(), "edges": g.edge_count()}
    if args.batch_size:
        total = g.node_count() + g.edge_count()
        payload["batches"] = math.ceil(total / args.batch_size) if total else 0
    print(json.dumps(payload) if args.json else
          ", ".join(f"{k}: {v}" for k, v in payload.items()))
    return 0


def cmd_export_csv(args) -> int:
    from .storage import export_csv_all

    g = _load_state(args)
    counts = export_csv_all(g, args.file, delimiter=args.delimiter,
                            use_types=args.use_types)
    print(json.dumps(counts) if args.json else
          f"nodes: {counts['nodes']}, edges: {counts['edges']}")
    return 0


_CENTRALITIES = {
    "degree": degree_centrality,
    "closeness": closeness_centrality,
    "betweenness": betweenness_centrality,
}


def cmd_algo(args) -> int:
    g = _load_state(args)
    name = args.name
    if name in _CENTRALITIES:
        mode = args.mode or ("raw" if name == "betweenness" else "normalized")
        payload = {"scores": _CENTRALITIES[name](g, mode=mode)}
    elif name == "eigenvector":
        payload = {"scores": eigenvector_centrality(g)}
    elif name == "pagerank":
        payload = {"scores": pagerank(g, damping=args.damping, weight=args.weight_key)}
    elif name == "louvain":
        partition, q = louvain(g if not g.directed else g.as_undirected(),
                               weight=args.weight_key)
        payload = {"communities": partition, "modularity": q}
    elif name == "wcc":
        payload = {"communities": weakly_connected_components(g)}
    elif name == "components":
        payload = {"components": [sorted(c) for c in connected_components(g)]}
    elif name == "density":
        payload = {"density": g.density()}
    elif name == "dijkstra":
        if args.source is None or args.target is None:
            raise GrafionError("algo dijkstra needs --source and --target")
        path, cost = dijkstra(g, args.source, args.target, weight=args.weight_key)
        payload = {"path": path, "cost": cost}
    else:
        raise GrafionError(f"unknown algorithm: {name}")
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key, value in payload.items():
            if isinstance(value, dict):
                print(key)
                for node in sorted(value):
                    print(f"  {node}: {value[node]}")
            else:
                print(f"{key}: {value}")
    return 0


def cmd_layout(args) -> int:
    g = _load_state(args)
    if args.name == "circular":
        positions = layout_module.circular_layout(g)
    elif args.name == "spectral":
        positions = layout_module.spectral_layout(g)
    else:
        positions = layout_module.spring_layout(g, iterations=args.iterations,
                                                seed=args.seed)
    write_layout_file(g, args.name, positions, args.output)
    print(f"wrote {args.output} ({len(positions)} positions)")
    return 0


def cmd_serve(args) -> int:
    host, _, port = args.bind.rpartition(":")
    engine = GraphEngine(_load_state(args), import_dir=args.import_dir)
    server = GraphServer(engine, (host or "localhost", int(port)),
                         user=args.user, password=getattr(args, "pass"))
    print(f"listening on {server.address[0]}:{server.address[1]}", flush=True)
    try:
        server.serve()
    except KeyboardInterrupt:
        pass
    return 0


# -- the REPL --------------------------------------------------------------------


def _print_caret(out, statement: str, offset) -> None:
    if offset is None:
        return
    consumed = 0
    for line in statement.splitlines() or [""]:
        if consumed + len(line) >= offset:
            out.write(line + "\n")
            out.write(" " * (offset - consumed) + "^\n")
            return
        consumed += len(line) + 1


def repl(args, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    engine = GraphEngine(_load_state(args), import_dir=args.import_dir)
    buffer: list[str] = []
    out.write("grafion interactive shell; statements end with ';', :quit leaves\n")
    while True:
        out.write("grafion> " if not buffer else "     ... ")
        out.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.rstrip("\n")
        if not buffer and not line.strip():
            continue
        if not buffer and line.strip().startswith(":"):
            command, _, argument = line.strip().partition(" ")
            if command == ":quit":
                break
            if command == ":load":
                try:
                    engine.graph = load_graph(argument.strip(), kind=args.kind)
                    out.write(f"loaded {engine.graph.node_count()} nodes, "
                              f"{engine.graph.edge_count()} edges\n")
                except GrafionError as exc:
                    out.write(f"error: {exc}\n")
                continue
            if command == ":export":
                try:
                    save_graph(engine.graph, argument.strip())
                    out.write(f"wrote {argument.strip()}\n")
                except GrafionError as exc:
                    out.write(f"error: {exc}\n")
                continue
            out.write(f"unknown command {command}\n")
            continue
        buffer.append(line)
        if not line.rstrip().endswith(";"):
            continue
        statement = "\n".join(buffer).strip()
        buffer = []
        try:
            result = engine.run(statement)
            out.write(format_table(result) + "\n")
        except QueryError as exc:
            out.write(f"error: {exc}\n")
            _print_caret(out, statement, exc.offset)
        except GrafionError as exc:
            out.write(f"error: {exc}\n")
    return 0


# -- argument wiring --------------------------------------------------------------


def _add_state_flags(parser, with_kind=True):
    parser.add_argument("--graph", help="graph state file (.json or .csv)")
    if with_kind:
        parser.add_argument("--kind", choices=["directed", "undirected"],
                            default="directed",
                            help="graph kind for new or CSV-loaded state")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grafion",
                     description="embedded property-graph engine")
    parser.add_argument("--import-dir", default=os.environ.get("GRAFION_IMPORT_DIR"),
                        help="base directory for file:/// URLs "
                             "(env GRAFION_IMPORT_DIR)")
    commands = parser.add_subparsers(dest="command")

    p = commands.add_parser("run", help="run one query and print the rows")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--json", action="store_true")
    _add_state_flags(p)
    p.set_defaults(func=cmd_run)

    p = commands.add_parser("repl", help="interactive shell")
    _add_state_flags(p)
    p.set_defaults(func=repl)

    p = commands.add_parser("import-csv", help="build graph state from a CSV export")
    p.add_argument("file")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--use-types", action="store_true")
    p.add_argument("--batch-size", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--graph", required=True, help="state file to write")
    p.add_argument("--kind", choices=["directed", "undirected"], default="directed")
    p.set_defaults(func=cmd_import_csv)

    p = commands.add_parser("export-csv", help="write the whole graph to one CSV file")
    p.add_argument("file")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--use-types", action="store_true")
    p.add_argument("--json", action="store_true")
    _add_state_flags(p)
    p.set_defaults(func=cmd_export_csv)

    p = commands.add_parser("algo", help="run a graph algorithm")
    p.add_argument("name", choices=sorted([*_CENTRALITIES, "eigenvector", "pagerank",
                                           "louvain", "wcc", "components", "density",
                                           "dijkstra"]))
    p.add_argument("--weight-key")
    p.add_argument("--mode", choices=["raw", "normalized"])
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--json", action="store_true")
    _add_state_flags(p)
    p.set_defaults(func=cmd_algo)

    p = commands.add_parser("layout", help="compute node positions and write a layout file")
    p.add_argument("name", choices=["circular", "spectral", "spring"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("-o", "--output", required=True)
    _add_state_flags(p)
    p.set_defaults(func=cmd_layout)

    p = commands.add_parser("serve", help="start the line-protocol server")
    p.add_argument("--bind", default="localhost:7687")
    p.add_argument("--user", default="neo4j")
    p.add_argument("--pass", default="")
    _add_state_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_help()
        return 1
    try:
        return args.func(args)
    except SystemExit:
        raise
    except GrafionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
