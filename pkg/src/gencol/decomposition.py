"""Ordered vertex partitions ("decompositions"), their width and flatness, and derived orders."""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, InputError
from .graph import Graph, components, contract_parts, distances, is_connected_set, is_isometric_path, is_path
from .order import LinearOrder
from .reach import TREEWIDTH_CAP, cost_of_order, strong_reach_sets, treewidth_exact, weak_reach_sets


@dataclass
class Decomposition:
    """Sequence of vertex-disjoint parts covering the graph.

    Each part is stored in its designated internal order (a path part runs from its designated
    endpoint).  ``paths`` optionally lists, per part, the paths whose union the part is.
    """

    parts: list[tuple[int, ...]]
    paths: list[list[tuple[int, ...]]] | None = None
    path_parts: bool = False

    def __post_init__(self) -> None:
        self.parts = [tuple(p) for p in self.parts]

    def __len__(self) -> int:
        return len(self.parts)

    def owner(self, n: int) -> list[int]:
        """Part index of every vertex; raises on overlaps, gaps and empty parts."""
        own = [-1] * n
        for i, part in enumerate(self.parts):
            if not part:
                raise InputError(f"part {i} is empty")
            for v in part:
                if not (0 <= v < n):
                    raise InputError(f"part {i} contains unknown vertex {v}")
                if own[v] != -1:
                    raise InputError(f"vertex {v} lies in parts {own[v]} and {i}")
                own[v] = i
        missing = [v for v in range(n) if own[v] == -1]
        if missing:
            raise InputError(f"decomposition misses vertices {missing[:10]}")
        return own

    def validate(self, G: Graph) -> None:
        self.owner(G.n)

    def path_counts(self) -> list[int]:
        if self.paths is None:
            return [1 if self.path_parts else 0 for _ in self.parts]
        return [len(p) for p in self.paths]

    def to_lines(self) -> str:
        return "".join(" ".join(map(str, p)) + "\n" for p in self.parts)

    @classmethod
    def from_lines(cls, text: str) -> "Decomposition":
        parts = []
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                try:
                    parts.append(tuple(int(tok) for tok in line.split()))
                except ValueError as exc:
                    raise InputError(f"bad decomposition line: {line!r}") from exc
        return cls(parts)


@dataclass(frozen=True)
class SpreadFunction:
    """Non-decreasing ``f: N -> N`` with a printable closed form."""

    evaluate: Callable[[int], int]
    form: str = "f(r)"

    def __call__(self, r: int) -> int:
        return self.evaluate(r)

    @classmethod
    def affine(cls, paths: int, extra: int = 0) -> "SpreadFunction":
        """``paths * (2r + 1) + extra``."""
        form = f"{paths}*(2r+1)" + (f"+{extra}" if extra else "")
        return cls(lambda r: paths * (2 * r + 1) + extra, form)


@dataclass
class WidthReport:
    width: int
    stage: int = 0
    component: list[int] = field(default_factory=list)
    attached: list[int] = field(default_factory=list)
    # separating number of every component, keyed by the stage it appeared at
    per_component: list[tuple[int, int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"width": self.width, "stage": self.stage, "component": self.component, "attached": self.attached}


def residual_components(G: Graph, D: Decomposition):
    """Yield ``(stage, component, attached part indices)`` for every component of every residual.

    A component is reported once, at the stage it first appears; its separating number does not
    change afterwards until a part is taken from it.
    """
    own = D.owner(G.n)
    comp_of = [0] * G.n
    comps: dict[int, set[int]] = {}
    for cid, c in enumerate(components(G)):
        comps[cid] = c
        for v in c:
            comp_of[v] = cid
        yield 0, c, []
    next_id = len(comps)
    for i, part in enumerate(D.parts):
        hit = {comp_of[v] for v in part}
        for cid in sorted(hit):
            rest = comps.pop(cid) - set(part)
            for c in components(G, within=rest):
                comps[next_id] = c
                for v in c:
                    comp_of[v] = next_id
                next_id += 1
                attached = sorted({own[w] for u in c for w in G.nbrs[u] if own[w] <= i})
                yield i + 1, c, attached


def width(G: Graph, D: Decomposition) -> WidthReport:
    """Largest number of earlier parts adjacent to a single residual component."""
    report = WidthReport(0)
    for stage, comp, attached in residual_components(G, D):
        report.per_component.append((stage, min(comp), len(attached)))
        if len(attached) > report.width:
            report.width = len(attached)
            report.stage = stage
            report.component = sorted(comp)
            report.attached = attached
    return report


def _residual_sets(G: Graph, D: Decomposition) -> list[set[int]]:
    """Vertex set of ``G - (H_1 ... H_{i-1})`` for every ``i``."""
    alive = set(range(G.n))
    out = []
    for part in D.parts:
        out.append(set(alive))
        alive -= set(part)
    return out


def spread_profile(G: Graph, D: Decomposition, r_max: int | None = None) -> list[dict[int, int]]:
    """For each part ``H_i``: radius -> ``max_v |N_r[v] ∩ H_i|`` in its residual graph.

    Radii are listed where the maximum changes; between them it is constant.  With ``r_max=None``
    all radii are covered because neighbourhoods stop growing at the eccentricity.
    """
    D.validate(G)
    profiles = []
    for part, alive in zip(D.parts, _residual_sets(G, D)):
        hist: dict[int, dict[int, int]] = defaultdict(lambda: defaultdict(int))
        for u in part:
            depth = {u: 0}
            queue = deque([u])
            while queue:
                x = queue.popleft()
                d = depth[x]
                hist[x][d] += 1
                if r_max is not None and d >= r_max:
                    continue
                for y in G.nbrs[x]:
                    if y not in depth and y in alive:
                        depth[y] = d + 1
                        queue.append(y)
        best: dict[int, int] = {}
        for counts in hist.values():
            total = 0
            for d in sorted(counts):
                total += counts[d]
                if total > best.get(d, 0):
                    best[d] = total
        # make it a step function: max over radii <= d
        prof: dict[int, int] = {}
        running = 0
        for d in sorted(best):
            if best[d] > running:
                running = best[d]
                prof[d] = running
        profiles.append(prof)
    return profiles


def check_f_flat(G: Graph, D: Decomposition, f: SpreadFunction | Callable[[int], int],
                 r_max: int | None = None) -> bool:
    """Whether every part ``f``-spreads on its residual graph, for all radii up to ``r_max``.

    ``f`` must be non-decreasing; then checking the radii where a neighbourhood count grows is
    enough, and ``r_max=None`` checks every radius.
    """
    return flatness_violation(G, D, f, r_max) is None


def flatness_violation(G: Graph, D: Decomposition, f, r_max: int | None = None) -> dict | None:
    for i, prof in enumerate(spread_profile(G, D, r_max)):
        for d, count in prof.items():
            if count > f(d):
                return {"part": i, "radius": d, "count": count, "allowed": f(d)}
    return None


def order_from_decomposition(D: Decomposition, within_part_rule: str = "given") -> LinearOrder:
    """Parts in sequence; inside a part the stored order (``"given"``) or ascending ids."""
    if within_part_rule not in ("given", "ascending"):
        raise InputError(f"unknown within-part rule {within_part_rule!r}")
    seq: list[int] = []
    for part in D.parts:
        seq.extend(part if within_part_rule == "given" else sorted(part))
    return LinearOrder(seq)


def restriction_holds(G: Graph, D: Decomposition, L: LinearOrder, r: int) -> bool:
    """Reach sets meet a part only inside the ``r``-ball of the residual graph that part lives in."""
    own = D.owner(G.n)
    alive_sets = _residual_sets(G, D)
    weak = weak_reach_sets(G, L, r)
    strong = strong_reach_sets(G, L, r)
    for v in range(G.n):
        hits: dict[int, set[int]] = defaultdict(set)
        for u in weak[v] | strong[v]:
            hits[own[u]].add(u)
        for i, found in hits.items():
            alive = alive_sets[i]
            if v not in alive:
                return False
            ball = distances(G, v, alive, r)
            if not found <= set(ball):
                return False
    return True


def bound_spd(f: SpreadFunction | Callable[[int], int], k: int, r: int) -> int:
    """``(k + 1) * f(r)``: strong colouring bound from an ``f``-flat decomposition of width ``k``."""
    return (k + 1) * f(r)


def bound_spdwcol(f: SpreadFunction | Callable[[int], int], k: int, r: int) -> int:
    """``C(r + k, k) * f(r)``: weak colouring bound from a connected ``f``-flat decomposition."""
    return math.comb(r + k, k) * f(r)


def certify(G: Graph, D: Decomposition, f: SpreadFunction, r_range: Iterable[int],
            r_max: int | None = None, tw_cap: int = TREEWIDTH_CAP) -> dict:
    """Run every check that applies to ``D`` and return a JSON-ready report.

    Checks: partition, connectivity, isometry of path parts, width, flatness, the tree-width of
    the contracted graph (only for connected decompositions small enough for the exact solver),
    and measured costs of the derived order against the width-based bounds.
    """
    checks: list[dict] = []

    def add(name: str, passed: bool | None, **detail) -> None:
        checks.append({"check": name, "passed": passed, **detail})

    try:
        D.validate(G)
    except InputError as exc:
        add("partition", False, error=str(exc))
        return {"passed": False, "checks": checks}
    add("partition", True, parts=len(D.parts))

    bad = next((i for i, p in enumerate(D.parts) if not is_connected_set(G, p)), None)
    connected = bad is None
    add("connected", connected, **({} if connected else {"part": bad}))

    if D.path_parts:
        alive = set(range(G.n))
        offender = None
        for i, part in enumerate(D.parts):
            if not is_path(G, part) or not is_isometric_path(G, part, alive):
                offender = i
                break
            alive -= set(part)
        add("isometric_paths", offender is None, **({} if offender is None else {"part": offender}))

    rep = width(G, D)
    add("width", True, **rep.to_dict())
    k = rep.width

    violation = flatness_violation(G, D, f, r_max)
    add("flat", violation is None, spread=f.form, r_max=r_max, **({"violation": violation} if violation else {}))

    if not connected:
        add("contraction_treewidth", None, skipped="decomposition not connected")
    elif len(D.parts) > tw_cap:
        add("contraction_treewidth", None, skipped=f"{len(D.parts)} parts exceed the exact tree-width cap {tw_cap}")
    else:
        try:
            tw = treewidth_exact(contract_parts(G, D.parts), cap=tw_cap)
            add("contraction_treewidth", tw <= k, treewidth=tw, width=k)
        except CapacityError as exc:
            add("contraction_treewidth", None, skipped=str(exc))

    L = order_from_decomposition(D)
    costs = []
    for r in r_range:
        strong = cost_of_order(G, L, r, "strong")
        row = {"r": r, "strong": strong, "strong_bound": bound_spd(f, k, r)}
        if connected:
            row["weak"] = cost_of_order(G, L, r, "weak")
            row["weak_bound"] = bound_spdwcol(f, k, r)
        costs.append(row)
    ok = all(c["strong"] <= c["strong_bound"] and c.get("weak", 0) <= c.get("weak_bound", 0) for c in costs)
    add("order_costs", ok, order=list(L.sequence) if G.n <= 64 else None, rows=costs)

    return {"passed": all(c["passed"] is not False for c in checks), "width": k, "checks": checks}
