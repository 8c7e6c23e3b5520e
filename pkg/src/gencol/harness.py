"""Strategies that turn a graph into a vertex order, their closed-form bounds, and report tables."""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import asdict, dataclass, field

from .builders import h_ipd, kt_flat_decomposition
from .decomposition import Decomposition, order_from_decomposition, width
from .errors import InputError
from .generators import Generated, complete_graph, generate, path_graph
from .graph import Graph, degeneracy_order
from .minors import MinorModel
from .order import LinearOrder
from .planar import (PlanarEmbedding, ipd_maximal_planar, lexbfs_planar_order, triangulate,
                     validate_embedding)
from .reach import cost_of_order

STRATEGIES = ("ipd-planar", "lexbfs-planar", "kt-flat", "h-ipd", "degeneracy")
CSV_COLUMNS = ("graph_id", "family", "n", "strategy", "r", "cost_strong", "cost_weak", "bound_strong", "bound_weak")


def parse_r_range(text: str) -> list[int]:
    """``"3"`` or ``"1..5"`` (inclusive)."""
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b) if sep else int(a)
    except ValueError:
        raise InputError(f"radius range must look like 3 or 1..5, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"bad radius range {text!r}")
    return list(range(lo, hi + 1))


def strategy_bounds(strategy: str, r: int, t: int | None = None, h: int | None = None,
                    alpha: int | None = None) -> tuple[int | None, int | None]:
    """Closed-form (strong, weak) bounds for orders produced by ``strategy``; ``None`` if none."""
    spread = 2 * r + 1
    if strategy == "ipd-planar":
        return 3 * spread, math.comb(r + 2, 2) * spread
    if strategy == "lexbfs-planar":
        return 5 * r + 1, None
    if strategy == "kt-flat":
        return (t - 1) * (t - 3) * spread, math.comb(r + t - 2, t - 2) * (t - 3) * spread
    if strategy == "h-ipd":
        k = 3 * h + alpha
        return h * spread + alpha, math.comb(r + k, k) * spread
    if strategy == "degeneracy":
        return None, None
    raise InputError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")


@dataclass
class StrategyRun:
    strategy: str
    order: LinearOrder | None
    decomposition: Decomposition | None = None
    certificate: MinorModel | None = None
    params: dict = field(default_factory=dict)
    host: Graph | None = None  # triangulation the order was computed on, if different

    @property
    def ok(self) -> bool:
        return self.order is not None


def _triangulation(G: Graph, emb: PlanarEmbedding | None) -> tuple[Graph, PlanarEmbedding]:
    if emb is None:
        raise InputError("planar strategies need an embedding (--embedding)")
    emb = validate_embedding(G, emb)
    if G.n >= 3 and (G.m != 3 * G.n - 6 or any(len(f) != 3 for f in emb.faces)):
        return triangulate(G, emb)
    return G, emb


def run_strategy(G: Graph, strategy: str, embedding: PlanarEmbedding | None = None, t: int | None = None,
                 H: Graph | None = None, apex: int | None = None, root: int = 0) -> StrategyRun:
    """Build an order for ``G``.  Planar strategies work on a triangulation of the given embedding
    (adding edges never lowers any cost, so its bounds carry over to ``G``)."""
    if strategy in ("ipd-planar", "lexbfs-planar"):
        T, emb = _triangulation(G, embedding)
        if T.n < 3:
            return StrategyRun(strategy, LinearOrder.identity(G.n))
        if strategy == "ipd-planar":
            D = ipd_maximal_planar(T, emb)
            return StrategyRun(strategy, order_from_decomposition(D), D, host=T if T is not G else None)
        return StrategyRun(strategy, lexbfs_planar_order(T, emb, root), host=T if T is not G else None)
    if strategy == "kt-flat":
        if t is None:
            raise InputError("kt-flat needs --t")
        res = kt_flat_decomposition(G, t)
        if not res.ok:
            return StrategyRun(strategy, None, certificate=res.certificate, params={"t": t})
        return StrategyRun(strategy, order_from_decomposition(res.decomposition), res.decomposition, params={"t": t})
    if strategy == "h-ipd":
        if H is None or apex is None:
            raise InputError("h-ipd needs --H and --apex")
        res = h_ipd(G, H, apex)
        params = {"h": res.info["h"], "alpha": res.info["alpha"]}
        if not res.ok:
            return StrategyRun(strategy, None, certificate=res.certificate, params=params)
        return StrategyRun(strategy, order_from_decomposition(res.decomposition), res.decomposition, params=params)
    if strategy == "degeneracy":
        return StrategyRun(strategy, degeneracy_order(G)[0])
    raise InputError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")


@dataclass
class BoundRow:
    graph_id: str
    family: str
    n: int
    strategy: str
    r: int
    cost_strong: int
    cost_weak: int
    bound_strong: int | None
    bound_weak: int | None

    @property
    def pass_strong(self) -> bool:
        return self.bound_strong is None or self.cost_strong <= self.bound_strong

    @property
    def pass_weak(self) -> bool:
        return self.bound_weak is None or self.cost_weak <= self.bound_weak

    @property
    def passed(self) -> bool:
        return self.pass_strong and self.pass_weak

    def to_dict(self) -> dict:
        d = asdict(self)
        d["margin_strong"] = None if self.bound_strong is None else self.bound_strong - self.cost_strong
        d["margin_weak"] = None if self.bound_weak is None else self.bound_weak - self.cost_weak
        d["pass"] = self.passed
        return d


def measure(graph_id: str, family: str, G: Graph, run: StrategyRun, r_values: list[int]) -> list[BoundRow]:
    rows = []
    for r in r_values:
        strong, weak = strategy_bounds(run.strategy, r, **run.params)
        rows.append(BoundRow(graph_id, family, G.n, run.strategy, r, cost_of_order(G, run.order, r, "strong"),
                             cost_of_order(G, run.order, r, "weak"), strong, weak))
    return rows


def failure_record(graph_id: str, run: StrategyRun) -> dict:
    return {"graph_id": graph_id, "strategy": run.strategy, "params": run.params,
            "certificate": run.certificate.as_lists() if run.certificate else None}


# --- verification matrix ------------------------------------------------------------------------


def _star() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3)])


def verification_matrix(seed: int, count: int, n_range: tuple[int, int]) -> list[tuple[str, Generated, list[dict]]]:
    """Seeded instances paired with the strategies whose bounds apply to them."""
    rng = random.Random(seed)
    lo, hi = n_range
    out = []
    for i in range(count):
        n = rng.randint(max(lo, 4), max(hi, 4))
        s = rng.randrange(2 ** 32)
        out.append((f"triangulation-{i}", generate("random-maximal-planar", {"n": n}, s),
                    [{"strategy": "ipd-planar"}, {"strategy": "lexbfs-planar"}, {"strategy": "kt-flat", "t": 5}]))
    for i in range(count):
        n = rng.randint(max(lo, 2), max(hi, 2))
        s = rng.randrange(2 ** 32)
        out.append((f"series-parallel-{i}", generate("series-parallel", {"n": n}, s),
                    [{"strategy": "h-ipd", "H": complete_graph(4), "apex": 0}, {"strategy": "kt-flat", "t": 4}]))
    for k in (2, 3):
        for i in range(count):
            n = rng.randint(max(lo, k + 1), max(hi, k + 1))
            s = rng.randrange(2 ** 32)
            out.append((f"{k}-tree-{i}", generate("k-tree", {"k": k, "n": n}, s),
                        [{"strategy": "kt-flat", "t": k + 2}]))
    n = rng.randint(max(lo, 1), max(hi, 1))
    out.append(("path-0", Generated(path_graph(n), None, "path", {"n": n}),
                [{"strategy": "h-ipd", "H": _star(), "apex": 0}]))
    return out


def verify(seed: int, count: int, n_range: tuple[int, int], r_values: list[int]) -> dict:
    """Bound report over the seeded matrix.  Contains no timings, so equal inputs give equal output."""
    rows: list[BoundRow] = []
    failures = []
    for graph_id, gen, plans in verification_matrix(seed, count, n_range):
        for plan in plans:
            plan = dict(plan)
            run = run_strategy(gen.graph, plan.pop("strategy"), embedding=gen.embedding, **plan)
            if not run.ok:
                failures.append(failure_record(graph_id, run))
                continue
            rows.extend(measure(graph_id, gen.family, gen.graph, run, r_values))
    return {"seed": seed, "count": count, "n_range": list(n_range), "r": r_values,
            "passed": not failures and all(row.passed for row in rows),
            "rows": [row.to_dict() for row in rows], "builder_failures": failures}


def rows_to_csv(rows: list[BoundRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        d = asdict(row)
        writer.writerow(["" if d[c] is None else d[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def sweep(graph_id: str, family: str, G: Graph, runs: list[StrategyRun], r_values: list[int]) -> list[BoundRow]:
    rows = []
    for run in runs:
        if run.ok:
            rows.extend(measure(graph_id, family, G, run, r_values))
    return rows


def decomposition_summary(G: Graph, run: StrategyRun) -> dict:
    out: dict = {"strategy": run.strategy, "params": run.params}
    if run.certificate is not None:
        out["certificate"] = run.certificate.as_lists()
        return out
    D = run.decomposition
    if D is None:
        out["order"] = list(run.order.sequence)
        return out
    host = run.host or G
    rep = width(host, D)
    out.update({"parts": [list(p) for p in D.parts], "path_counts": D.path_counts(), "width": rep.width,
                "order": list(run.order.sequence)})
    if run.host is not None:
        out["triangulation_edges"] = [list(e) for e in run.host.edges()]
    return out
