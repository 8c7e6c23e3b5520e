"""Command line entry point: ``gencol exact|evaluate|decompose|verify|sweep``."""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

from .errors import CapacityError, GencolError, InputError, InternalConsistencyError
from .generators import FAMILIES, generate
from .graph import Graph
from .harness import (STRATEGIES, BoundRow, decomposition_summary, failure_record, measure, parse_r_range, rows_to_csv,
                      run_strategy, verify)
from .io import read_graph, read_order, read_rotation
from .reach import EXACT_GCN_CAP, cost_of_order, exact_gcn


def _pattern(spec: str) -> Graph:
    """``K4``, ``K1,3``, ``C5``, ``P3`` or a graph file."""
    m = re.fullmatch(r"K(\d+)", spec)
    if m:
        t = int(m.group(1))
        return Graph(t, [(i, j) for i in range(t) for j in range(i + 1, t)])
    m = re.fullmatch(r"K(\d+),(\d+)", spec)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    m = re.fullmatch(r"([CP])(\d+)", spec)
    if m:
        k = int(m.group(2))
        edges = [(i, i + 1) for i in range(k - 1)] + ([(k - 1, 0)] if m.group(1) == "C" and k > 2 else [])
        return Graph(k, edges)
    return read_graph(spec)


def _params(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            try:
                out[key] = float(value)
            except ValueError:
                raise InputError(f"--param {key} must be numeric, got {value!r}") from None
    return out


def _load(args) -> tuple[str, str, Graph, object]:
    """Graph id, family, graph and embedding from ``--input``/``--embedding`` or ``--family``."""
    if args.input:
        G = read_graph(args.input)
        emb = read_rotation(args.embedding, G.n) if args.embedding else None
        return Path(args.input).stem, "file", G, emb
    if args.family:
        gen = generate(args.family, _params(args.param), args.seed)
        return f"{args.family}-seed{args.seed}", args.family, gen.graph, gen.embedding
    raise InputError("give a graph with --input or --family")


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _radius(token: str) -> list:
    if token in ("inf", "infinity"):
        return [math.inf]
    return parse_r_range(token)


def cmd_exact(args) -> int:
    graph_id, _, G, _ = _load(args)
    rows = []
    for r in _radius(args.r):
        value, L = exact_gcn(G, r, args.mode, cap=args.cap)
        rows.append({"r": "inf" if r == math.inf else r, "mode": args.mode, "value": value, "order": list(L.sequence)})
    _emit(args, {"graph_id": graph_id, "n": G.n, "m": G.m, "rows": rows})
    return 0


def cmd_evaluate(args) -> int:
    graph_id, family, G, emb = _load(args)
    if args.order:
        L = read_order(args.order)
        strategy = "given"
    else:
        run = _run(args, G, emb)
        if not run.ok:
            _emit(args, failure_record(graph_id, run))
            return 1
        L, strategy = run.order, run.strategy
    rows = []
    for r in _radius(args.r):
        row = {"r": "inf" if r == math.inf else r}
        for mode in ("strong", "weak") if args.mode is None else (args.mode,):
            row[mode] = cost_of_order(G, L, r, mode)
        rows.append(row)
    _emit(args, {"graph_id": graph_id, "n": G.n, "strategy": strategy, "order": list(L.sequence), "rows": rows})
    return 0


def _run(args, G: Graph, emb):
    if not args.strategy:
        raise InputError("choose a --strategy")
    H = _pattern(args.H) if args.H else None
    return run_strategy(G, args.strategy[0], embedding=emb, t=args.t, H=H, apex=args.apex)


def cmd_decompose(args) -> int:
    graph_id, _, G, emb = _load(args)
    run = _run(args, G, emb)
    _emit(args, {"graph_id": graph_id, "n": G.n, **decomposition_summary(G, run)})
    return 0 if run.ok else 1


def cmd_verify(args) -> int:
    r_values = parse_r_range(args.r)
    if args.input or args.family:
        graph_id, family, G, emb = _load(args)
        rows, failures = [], []
        H = _pattern(args.H) if args.H else None
        for strategy in args.strategy or ["degeneracy"]:
            run = run_strategy(G, strategy, embedding=emb, t=args.t, H=H, apex=args.apex)
            if run.ok:
                rows.extend(measure(graph_id, family, G, run, r_values))
            else:
                failures.append(failure_record(graph_id, run))
        report = {"seed": args.seed, "r": r_values, "passed": not failures and all(x.passed for x in rows),
                  "rows": [x.to_dict() for x in rows], "builder_failures": failures}
    else:
        lo, hi = parse_r_range(args.n)[0], parse_r_range(args.n)[-1]
        report = verify(args.seed, args.count, (lo, hi), r_values)
    if args.format == "csv":
        table = [BoundRow(**{k: d[k] for k in BoundRow.__dataclass_fields__}) for d in report["rows"]]
        _emit(args, rows_to_csv(table))
    else:
        _emit(args, report)
    return 0 if report["passed"] else 1


def cmd_sweep(args) -> int:
    graph_id, family, G, emb = _load(args)
    H = _pattern(args.H) if args.H else None
    rows = []
    for strategy in args.strategy or list(STRATEGIES[:2]):
        run = run_strategy(G, strategy, embedding=emb, t=args.t, H=H, apex=args.apex)
        if run.ok:
            rows.extend(measure(graph_id, family, G, run, parse_r_range(args.r)))
    if args.format == "json":
        _emit(args, {"rows": [x.to_dict() for x in rows]})
    else:
        _emit(args, rows_to_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gencol", description="Generalised colouring numbers: exact values, "
                                     "constructive orders and bound verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, r_default: str) -> None:
        p.add_argument("--input", help="graph file (graph6 or edge list)")
        p.add_argument("--embedding", help="rotation system file for --input")
        p.add_argument("--family", choices=FAMILIES, help="generate the graph instead of reading it")
        p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                       help="generator parameter, e.g. n=50 (repeatable)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--r", default=r_default, help="radius or inclusive range a..b")
        p.add_argument("--strategy", action="append", choices=STRATEGIES)
        p.add_argument("--t", type=int, help="excluded clique size for kt-flat")
        p.add_argument("--H", help="excluded minor for h-ipd: K4, K1,3, C5, P3 or a graph file")
        p.add_argument("--apex", type=int, help="apex vertex of --H")
        p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("exact", help="optimal colouring number with a witness order")
    common(p, "1")
    p.add_argument("--mode", choices=("weak", "strong"), default="strong")
    p.add_argument("--cap", type=int, default=EXACT_GCN_CAP, help="largest vertex count for the exact search")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("evaluate", help="cost of a given or constructed order")
    common(p, "1..5")
    p.add_argument("--order", help="file with the vertex order, smallest first")
    p.add_argument("--mode", choices=("weak", "strong"))
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("decompose", help="run a builder and print its decomposition or minor certificate")
    common(p, "1")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check measured costs against the closed-form bounds")
    common(p, "1..5")
    p.add_argument("--count", type=int, default=3, help="instances per family in the seeded matrix")
    p.add_argument("--n", default="20..60", help="vertex count range for the seeded matrix")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="cost against r for each strategy, as CSV")
    common(p, "1..5")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalConsistencyError:
        raise
    except CapacityError as exc:
        print(f"gencol: {exc}. Use a smaller graph or raise the cap (--cap) if you can afford the run time.",
              file=sys.stderr)
        return 3
    except GencolError as exc:
        print(f"gencol: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
