"""Decomposition builders for graphs excluding a minor.

Both builders run on any input.  When the structure they maintain would grow past what an
``H``-minor-free graph allows, they stop and return a model of ``H`` instead, so every run ends
with either a decomposition or a checked minor certificate.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable

from .decomposition import Decomposition, SpreadFunction
from .errors import InputError, InternalConsistencyError
from .graph import Graph, bfs_tree, components, distances, is_connected_set, is_path, shortest_path
from .minors import MinorModel, complete_graph, is_valid_model


@dataclass
class BuilderResult:
    decomposition: Decomposition | None
    certificate: MinorModel | None
    trace: list[dict] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.decomposition is not None


def replay_trace(trace: list[dict]) -> Decomposition:
    """Rebuild the decomposition from the parts recorded in a trace."""
    return Decomposition([tuple(step["part"]) for step in trace if "part" in step], path_parts=True)


def _neighbour_parts(G: Graph, comp: Iterable[int], own: list[int]) -> set[int]:
    return {own[w] for u in comp for w in G.nbrs[u] if own[w] >= 0}


# --- connected flat decompositions for K_t-minor-free graphs -------------------------------


def kt_flat_decomposition(G: Graph, t: int, check: bool = True) -> BuilderResult:
    """Connected decomposition of width at most ``t - 2`` whose parts are unions of at most
    ``t - 3`` shortest root paths of a BFS tree, or a model of ``K_t``.

    Each residual component keeps the list of earlier parts touching it; those parts are pairwise
    adjacent.  The next part grows a BFS tree in the component from a vertex next to the first
    attached part and takes the root paths to one neighbour of each other attached part.  If a
    new component ever touches ``t - 1`` parts, contracting it gives ``K_t``.
    """
    if t < 4:
        raise InputError(f"t must be at least 4, got {t}")
    if G.n == 0:
        raise InputError("graph must be non-empty")
    own = [-1] * G.n
    parts: list[tuple[int, ...]] = []
    paths: list[list[tuple[int, ...]]] = []
    trace: list[dict] = []
    heap: list[tuple[int, int, tuple[int, ...]]] = []
    tie = 0
    comp_sets: dict[int, set[int]] = {}
    for c in components(G):
        comp_sets[tie] = c
        heapq.heappush(heap, (min(c), tie, ()))
        tie += 1
    while heap:
        _, key, attached = heapq.heappop(heap)
        comp = comp_sets.pop(key)
        if not attached:
            root = min(comp)
            chosen = [(root,)]
        else:
            first = set(parts[attached[0]])
            root = min(u for u in comp if G.adj[u] & first)
            tree = bfs_tree(G, root, comp)
            chosen = []
            for q in attached[1:]:
                target = set(parts[q])
                w = min(u for u in comp if G.adj[u] & target)
                chosen.append(tuple(tree.root_path(w)))
            if not chosen:
                chosen = [(root,)]
        part = tuple(sorted({v for p in chosen for v in p}))
        idx = len(parts)
        parts.append(part)
        paths.append(chosen)
        for v in part:
            own[v] = idx
        step = {"step": idx, "component_min": min(comp), "attached": list(attached), "part": list(part),
                "paths": [list(p) for p in chosen], "children": []}
        trace.append(step)
        for child in components(G, within=comp - set(part)):
            touching = sorted(_neighbour_parts(G, child, own))
            if check:
                for a in touching:
                    for b in touching:
                        if a < b and not any(G.adj[u] & set(parts[b]) for u in parts[a]):
                            raise InternalConsistencyError(f"parts {a} and {b} touch a component but not each other")
            step["children"].append({"component_min": min(child), "size": len(child), "attached": touching})
            if len(touching) >= t - 1:
                sets = [set(parts[q]) for q in touching[: t - 1]] + [set(child)]
                model = MinorModel({h: frozenset(s) for h, s in enumerate(sets)})
                if not is_valid_model(G, complete_graph(t), model):
                    raise InternalConsistencyError("K_t certificate failed validation")
                return BuilderResult(None, model, trace, {"t": t})
            comp_sets[tie] = child
            heapq.heappush(heap, (min(child), tie, tuple(touching)))
            tie += 1
    D = Decomposition(parts, paths=paths)
    return BuilderResult(D, None, trace, {"t": t, "spread": SpreadFunction.affine(t - 3).form})


# --- pebbled isometric paths decompositions for H-minor-free graphs -------------------------


class Pattern:
    """``H - apex`` with its vertices renumbered ``0..k-1`` (in increasing order of ``H`` id)."""

    def __init__(self, H: Graph, apex: int):
        if not (isinstance(apex, int) and 0 <= apex < H.n):
            raise InputError(f"apex {apex!r} is not a vertex of H (H has {H.n} vertices)")
        self.H = H
        self.apex = apex
        self.verts = [x for x in range(H.n) if x != apex]
        index = {x: i for i, x in enumerate(self.verts)}
        self.k = len(self.verts)
        self.adj: list[set[int]] = [{index[y] for y in H.nbrs[x] if y != apex} for x in self.verts]
        self.edges = {frozenset((i, j)) for i in range(self.k) for j in self.adj[i] if i < j}
        self.h = len(self.edges)
        self.alpha = sum(1 for i in range(self.k) if not self.adj[i])

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    @property
    def col_bound_slope(self) -> int:
        return self.h

    def col_bound(self, r: int) -> int:
        """``h * (2r + 1) + alpha``."""
        return self.h * (2 * r + 1) + self.alpha

    def width_bound(self) -> int:
        return 3 * self.h + self.alpha


@dataclass
class EdgeModel:
    """Path realising a pattern edge; ``path[0]`` lies in the model of ``ends[0]``."""

    path: tuple[int, ...]
    ends: tuple[int, int]
    host: int
    region_isometric: bool

    def oriented(self, i: int) -> tuple[int, ...]:
        return self.path if self.ends[0] == i else self.path[::-1]

    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]


@dataclass
class MinorModelState:
    """Pebbled model of a proper subgraph ``M`` of ``H - apex`` attached to one residual component."""

    m_vertices: set[int] = field(default_factory=set)
    m_edges: set[frozenset[int]] = field(default_factory=set)
    models: dict[int, set[int]] = field(default_factory=dict)
    pebbles: dict[tuple[int, int], int] = field(default_factory=dict)
    edge_models: dict[frozenset[int], EdgeModel] = field(default_factory=dict)

    def copy(self) -> "MinorModelState":
        return MinorModelState(set(self.m_vertices), set(self.m_edges),
                               {i: set(s) for i, s in self.models.items()}, dict(self.pebbles),
                               {e: EdgeModel(m.path, m.ends, m.host, m.region_isometric)
                                for e, m in self.edge_models.items()})

    def add_vertex(self, pattern: Pattern, a: int, v: int) -> None:
        self.m_vertices.add(a)
        self.models[a] = {v}
        for j in pattern.adj[a]:
            self.pebbles[(a, j)] = v

    def is_full(self, pattern: Pattern) -> bool:
        return len(self.m_vertices) == pattern.k and self.m_edges == pattern.edges

    def summary(self) -> dict:
        return {"M_vertices": sorted(self.m_vertices), "M_edges": sorted(sorted(e) for e in self.m_edges)}


def _contact_set(G: Graph, comp: set[int]) -> set[int]:
    """Vertices outside ``comp`` with a neighbour in it."""
    return {w for u in comp for w in G.nbrs[u] if w not in comp}


def reestablish_invariants(G: Graph, pattern: Pattern, state: MinorModelState, comp: set[int]) -> MinorModelState:
    """Adapt the model of a split component to one of its pieces ``comp``.

    For every vertex model, each edge path whose pebbled end lost contact with ``comp`` is
    absorbed into the vertex model up to its first vertex that still has contact, which becomes
    the new pebbled end; when no interior vertex has contact the pattern edge is dropped.
    Vertex models without contact are dropped, and remaining pebbles on contact-free vertices
    move to the smallest vertex of the model that has contact.
    """
    st = state.copy()
    touch = _contact_set(G, comp)
    for i in sorted(st.m_vertices):
        for j in sorted(pattern.adj[i]):
            e = frozenset((i, j))
            if e not in st.m_edges:
                continue
            em = st.edge_models[e]
            path = em.oriented(i)
            if path[0] != st.pebbles[(i, j)]:
                raise InternalConsistencyError(f"edge path for {sorted(e)} does not start at pebble ({i},{j})")
            if path[0] in touch:
                continue
            s = len(path)
            x = next((y for y in range(1, s - 1) if path[y] in touch), s - 2)
            st.models[i].update(path[1:x + 1])
            if path[x] in touch:
                em.path, em.ends = path[x:], (i, j)
                st.pebbles[(i, j)] = path[x]
            else:
                st.m_edges.discard(e)
                del st.edge_models[e]
        live = sorted(u for u in st.models[i] if u in touch)
        if not live:
            if any(e for e in st.m_edges if i in e):
                raise InternalConsistencyError(f"model of h{i} lost contact but keeps an edge")
            st.m_vertices.discard(i)
            del st.models[i]
            for j in pattern.adj[i]:
                del st.pebbles[(i, j)]
            continue
        for j in pattern.adj[i]:
            if st.pebbles[(i, j)] not in touch:
                st.pebbles[(i, j)] = live[0]
    return st


def model_state_violations(G: Graph, pattern: Pattern, parts: list[tuple[int, ...]], comp: set[int],
                           state: MinorModelState) -> list[str]:
    """List every way ``state`` fails the four construction conditions with respect to ``comp``.

    Contact sets are recomputed from the graph; nothing is taken from the builder except the
    recorded host part and region isometry of each edge path.
    """
    bad: list[str] = []
    placed = {v for p in parts for v in p}
    if comp & placed:
        bad.append("component overlaps placed parts")
    contact = {u for u in placed if G.adj[u] & comp}

    if not state.m_vertices <= set(range(pattern.k)):
        bad.append("M has unknown vertices")
    for e in state.m_edges:
        if e not in pattern.edges or not e <= state.m_vertices:
            bad.append(f"M edge {sorted(e)} not an edge of H-v between M vertices")
    if state.is_full(pattern):
        bad.append("M equals H-v")
    if set(state.models) != state.m_vertices:
        bad.append("vertex models do not match M")

    # condition 1
    seen: set[int] = set()
    for i, model in state.models.items():
        if not model or not model <= placed:
            bad.append(f"model of h{i} is empty or uses unplaced vertices")
        if model & seen:
            bad.append(f"model of h{i} overlaps another model")
        seen |= model
        if model and not is_connected_set(G, model):
            bad.append(f"model of h{i} is disconnected")

    # condition 2
    expected_keys = {(i, j) for i in state.m_vertices for j in pattern.adj[i]}
    if set(state.pebbles) != expected_keys:
        bad.append("pebble set does not match the degrees of M's vertices in H-v")
    for i, model in state.models.items():
        touching = model & contact
        if not pattern.adj[i]:
            if len(model) != 1 or not touching:
                bad.append(f"isolated h{i} must be one vertex with contact")
            continue
        pebbled = {state.pebbles[(i, j)] for j in pattern.adj[i] if (i, j) in state.pebbles}
        if not pebbled <= model:
            bad.append(f"pebble of h{i} outside its model")
        if pebbled != touching:
            bad.append(f"pebbles of h{i} do not occupy exactly its contact vertices")
        if not touching:
            bad.append(f"model of h{i} has no contact")

    # condition 3
    if set(state.edge_models) != state.m_edges:
        bad.append("edge paths do not match M's edges")
    interiors: set[int] = set()
    hosts: set[int] = set()
    for e, em in state.edge_models.items():
        i, j = em.ends
        if frozenset((i, j)) != e:
            bad.append(f"edge path {sorted(e)} has wrong ends")
            continue
        if not is_path(G, em.path) or len(em.path) < 2:
            bad.append(f"edge path {sorted(e)} is not a path")
            continue
        if em.path[0] != state.pebbles.get((i, j)) or em.path[-1] != state.pebbles.get((j, i)):
            bad.append(f"edge path {sorted(e)} does not join the pebbles p{i}{j}, p{j}{i}")
        inner = set(em.interior())
        if inner & seen or inner & interiors or not inner <= placed:
            bad.append(f"interior of edge path {sorted(e)} overlaps models, other paths or unplaced vertices")
        if inner:
            if not (0 <= em.host < len(parts)) or not inner <= set(parts[em.host]):
                bad.append(f"interior of edge path {sorted(e)} is not on its host part")
            if em.host in hosts:
                bad.append(f"host part {em.host} carries two edge paths")
            hosts.add(em.host)
        interiors |= inner
        if not em.region_isometric:
            bad.append(f"edge path {sorted(e)} was not isometric in its region")

    # condition 4
    stray = contact - seen - interiors
    if stray:
        bad.append(f"contact vertices outside the model: {sorted(stray)[:5]}")
    return bad


def validate_model_state(G: Graph, pattern: Pattern, parts: list[tuple[int, ...]], comp: set[int],
                         state: MinorModelState) -> bool:
    return not model_state_violations(G, pattern, parts, comp, state)


def _closest_pair(G: Graph, sources: list[int], targets: set[int], within: set[int]) -> tuple[int, int]:
    """Least-id pair ``(a, b)`` minimising the distance inside ``within``."""
    dist = distances(G, sources, within)
    best = min(dist[b] for b in targets if b in dist)
    for a in sorted(sources):
        near = distances(G, a, within, best)
        hits = [b for b in targets if near.get(b) == best]
        if hits:
            return a, min(hits)
    raise InternalConsistencyError("no closest pair found")


def _full_certificate(G: Graph, pattern: Pattern, state: MinorModelState, comp: set[int]) -> MinorModel:
    sets: dict[int, set[int]] = {}
    for i in range(pattern.k):
        sets[pattern.verts[i]] = set(state.models[i])
    for em in state.edge_models.values():
        sets[pattern.verts[em.ends[0]]] |= set(em.interior())
    sets[pattern.apex] = set(comp)
    return MinorModel({h: frozenset(s) for h, s in sets.items()})


def h_ipd(G: Graph, H: Graph, apex: int, validate: bool = True) -> BuilderResult:
    """Isometric paths decomposition of width at most ``3h + alpha``, or a model of ``H``.

    ``h`` is the number of edges of ``H - apex`` and ``alpha`` its number of isolated vertices.
    Every residual component carries a pebbled model of a proper subgraph ``M`` of ``H - apex``.
    If ``M`` misses an edge between two of its vertices, the next path is a shortest path in the
    component between the closest pair of neighbours of the two pebbled ends (case 1); otherwise
    a single vertex starts the model of a new pattern vertex (case 2).  Components are processed
    smallest vertex first.  With ``validate`` every new state is checked by
    :func:`model_state_violations`.
    """
    pattern = Pattern(H, apex)
    if G.n == 0:
        raise InputError("graph must be non-empty")
    info = {"h": pattern.h, "alpha": pattern.alpha, "width_bound": pattern.width_bound()}
    own = [-1] * G.n
    parts: list[tuple[int, ...]] = []
    trace: list[dict] = []
    heap: list[tuple[int, int]] = []
    pending: dict[int, tuple[set[int], MinorModelState]] = {}
    tie = 0
    sharpest = 0

    def place(part: tuple[int, ...]) -> int:
        idx = len(parts)
        parts.append(part)
        for v in part:
            own[v] = idx
        return idx

    def settle(step: dict, comp: set[int], st: MinorModelState) -> MinorModel | None:
        nonlocal tie, sharpest
        violations = model_state_violations(G, pattern, parts, comp, st) if validate else []
        if st.is_full(pattern):
            model = _full_certificate(G, pattern, st, comp)
            if not is_valid_model(G, H, model):
                raise InternalConsistencyError("H certificate failed validation")
            return model
        if violations:
            raise InternalConsistencyError(f"state for component at {min(comp)} breaks {violations}")
        separating = len(_neighbour_parts(G, comp, own))
        contact = _contact_set(G, comp)
        m1 = len({own[u] for i, mdl in st.models.items() for u in mdl if u in contact})
        m2 = len(st.m_edges)
        if separating > m1 + m2 or m1 + m2 > pattern.width_bound() - 1:
            raise InternalConsistencyError(f"separating count {separating} vs m1+m2 = {m1}+{m2}")
        sharpest = max(sharpest, separating)
        step["children"].append({"component_min": min(comp), "size": len(comp), **st.summary(),
                                 "separating": separating, "m1": m1, "m2": m2, "valid": not violations})
        pending[tie] = (comp, st)
        heapq.heappush(heap, (min(comp), tie))
        tie += 1
        return None

    def finish(model: MinorModel) -> BuilderResult:
        info["sharpest_separating"] = sharpest
        return BuilderResult(None, model, trace, info)

    for start in components(G):
        v0 = min(start)
        if pattern.k == 0:
            return finish(MinorModel({apex: frozenset({v0})}))
        idx = place((v0,))
        step = {"step": idx, "case": "start", "component_min": v0, "part": [v0], "children": []}
        trace.append(step)
        for child in components(G, within=start - {v0}):
            st = MinorModelState()
            st.add_vertex(pattern, 0, v0)
            model = settle(step, child, st)
            if model is not None:
                return finish(model)

    while heap:
        _, key = heapq.heappop(heap)
        comp, state = pending.pop(key)
        st = state.copy()
        missing = sorted((i, j) for i in st.m_vertices for j in pattern.adj[i]
                         if i < j and j in st.m_vertices and frozenset((i, j)) not in st.m_edges)
        if missing:
            i, j = missing[0]
            vij, vji = st.pebbles[(i, j)], st.pebbles[(j, i)]
            near_i = sorted(w for w in G.nbrs[vij] if w in comp)
            near_j = {w for w in G.nbrs[vji] if w in comp}
            a, b = _closest_pair(G, near_i, near_j, comp)
            path = tuple(shortest_path(G, a, b, comp))
            edge_path = (vij,) + path + (vji,)
            # isometric in G[comp + {vij, vji}] minus the edge vij-vji, if present
            region = distances(G, near_i, comp | {vji})
            region_ok = region.get(vji, math.inf) + 1 == len(edge_path) - 1
            idx = place(path)
            st.m_edges.add(frozenset((i, j)))
            st.edge_models[frozenset((i, j))] = EdgeModel(edge_path, (i, j), idx, region_ok)
            step = {"step": idx, "case": 1, "component_min": min(comp), "pair": [i, j], "part": list(path),
                    "children": []}
        else:
            a_new = min(x for x in range(pattern.k) if x not in st.m_vertices)
            v = min(comp)
            idx = place((v,))
            st.add_vertex(pattern, a_new, v)
            step = {"step": idx, "case": 2, "component_min": min(comp), "vertex": a_new, "part": [v],
                    "children": []}
        trace.append(step)
        for child in components(G, within=comp - set(parts[idx])):
            nxt = reestablish_invariants(G, pattern, st, child)
            model = settle(step, child, nxt)
            if model is not None:
                return finish(model)

    info["sharpest_separating"] = sharpest
    D = Decomposition(parts, paths=[[p] for p in parts], path_parts=True)
    return BuilderResult(D, None, trace, info)
