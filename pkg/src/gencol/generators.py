"""Seeded graph families.  Planar families come with a rotation system built alongside the graph."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import InputError
from .graph import Graph, components, relabel
from .planar import (PlanarEmbedding, embedding_from_coordinates, flip_edge, insert_vertex_in_triangle,
                     insert_vertex_on_dart, triangulate, validate_embedding)


@dataclass
class Generated:
    graph: Graph
    embedding: PlanarEmbedding | None = None
    family: str = ""
    params: dict | None = None


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def _int(name: str, value, low: int) -> int:
    _need(isinstance(value, int) and not isinstance(value, bool) and value >= low,
          f"{name} must be an integer >= {low}, got {value!r}")
    return value


def path_graph(n: int) -> Graph:
    _int("n", n, 1)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    _int("n", n, 3)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    _int("n", n, 1)
    return Graph(n, itertools.combinations(range(n), 2))


def grid(m: int, n: int, diagonals: bool = False) -> Generated:
    """``m x n`` grid, vertex ``(i, j)`` numbered ``i*n + j``; optionally with one diagonal per cell."""
    _int("m", m, 1)
    _int("n", n, 1)
    _need(m * n >= 2, "grid needs at least two vertices")
    edges = []
    for i in range(m):
        for j in range(n):
            v = i * n + j
            if j + 1 < n:
                edges.append((v, v + 1))
            if i + 1 < m:
                edges.append((v, v + n))
            if diagonals and i + 1 < m and j + 1 < n:
                edges.append((v, v + n + 1))
    G = Graph(m * n, edges)
    coords = [(float(j), float(i)) for i in range(m) for j in range(n)]
    emb = embedding_from_coordinates(G, coords) if G.m else None
    return Generated(G, emb, "grid", {"m": m, "n": n, "diagonals": diagonals})


def triangulated_grid(m: int, n: int) -> Generated:
    """Grid with cell diagonals, its outer face then filled with chords: a triangulation."""
    _need(m >= 2 and n >= 2, "triangulated grid needs m, n >= 2")
    base = grid(m, n, diagonals=True)
    G, emb = triangulate(base.graph, base.embedding)
    return Generated(G, emb, "triangulated-grid", {"m": m, "n": n})


def random_forest(n: int, seed: int, root_probability: float = 0.2) -> Graph:
    _int("n", n, 1)
    rng = random.Random(seed)
    edges = [(v, rng.randrange(v)) for v in range(1, n) if rng.random() >= root_probability]
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(Graph(n, edges), perm)


def random_tree(n: int, seed: int) -> Graph:
    return random_forest(n, seed, root_probability=0.0)


def k_tree(k: int, n: int, seed: int) -> Graph:
    """Random ``k``-tree: a ``(k+1)``-clique grown by vertices joined to existing ``k``-cliques."""
    _int("k", k, 1)
    _int("n", n, k + 1)
    rng = random.Random(seed)
    edges = list(itertools.combinations(range(k + 1), 2))
    cliques = [c for c in itertools.combinations(range(k + 1), k)]
    for x in range(k + 1, n):
        base = cliques[rng.randrange(len(cliques))]
        edges.extend((y, x) for y in base)
        cliques.extend(tuple(sorted(set(base) - {y} | {x})) for y in base)
    perm = list(range(n))
    rng.shuffle(perm)
    return relabel(Graph(n, edges), perm)


def random_graph(n: int, p: float, seed: int) -> Graph:
    _int("n", n, 1)
    _need(0.0 <= p <= 1.0, f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_maximal_planar(n: int, seed: int, flips: int | None = None) -> Generated:
    """Triangulation grown by inserting each vertex into a random inner face, then mixed by
    random edge flips away from the outer triangle (``n`` flip attempts by default)."""
    _int("n", n, 3)
    rng = random.Random(seed)
    rot: list[list[int]] = [[1, 2], [2, 0], [0, 1]]
    inner = [(0, 1, 2)]
    for x in range(3, n):
        i = rng.randrange(len(inner))
        a, b, c = inner[i]
        insert_vertex_in_triangle(rot, x, a, b, c)
        inner[i] = (a, b, x)
        inner.extend([(b, c, x), (c, a, x)])
    outer = {0, 1, 2}
    for _ in range(n if flips is None else flips):
        u = rng.randrange(n)
        v = rot[u][rng.randrange(len(rot[u]))]
        if u in outer and v in outer:
            continue
        flip_edge(rot, u, v)
    G = Graph.from_adjacency(rot)
    emb = validate_embedding(G, rot, (0, 2), maximal=True)
    return Generated(G, emb, "random-maximal-planar", {"n": n, "seed": seed})


def series_parallel(n: int, seed: int, drop: float = 0.2) -> Generated:
    """Connected ``K_4``-minor-free graph: a random 2-tree with some non-bridge edges removed."""
    _int("n", n, 2)
    _need(0.0 <= drop < 1.0, f"drop rate must lie in [0, 1), got {drop}")
    rng = random.Random(seed)
    rot: list[list[int]] = [[1], [0]]
    edges = [(0, 1)]
    for x in range(2, n):
        a, b = edges[rng.randrange(len(edges))]
        if rng.random() < 0.5:
            a, b = b, a
        insert_vertex_on_dart(rot, x, a, b)
        edges.extend([(a, x), (b, x)])
    G = Graph.from_adjacency(rot)
    for u, v in sorted(G.edges()):
        if rng.random() < drop:
            H = G.remove_edges([(u, v)])
            if len(components(H)) == 1:
                G = H
                rot[u].remove(v)
                rot[v].remove(u)
    emb = validate_embedding(G, rot, (0, rot[0][0]))
    return Generated(G, emb, "series-parallel", {"n": n, "seed": seed})


FAMILIES = ("path", "cycle", "complete", "grid", "triangulated-grid", "forest", "k-tree",
            "random-maximal-planar", "series-parallel", "gnp")


def generate(family: str, params: dict, seed: int = 0) -> Generated:
    """Dispatch by family name; ``seed`` is ignored by deterministic families."""
    p = dict(params)
    try:
        if family == "path":
            G = path_graph(p["n"])
            return Generated(G, embedding_from_coordinates(G, [(float(i), 0.0) for i in range(G.n)]) if G.n > 1 else None, family, p)
        if family == "cycle":
            return Generated(cycle_graph(p["n"]), None, family, p)
        if family == "complete":
            return Generated(complete_graph(p["n"]), None, family, p)
        if family == "grid":
            return grid(p["m"], p["n"])
        if family == "triangulated-grid":
            return triangulated_grid(p["m"], p["n"])
        if family == "forest":
            return Generated(random_forest(p["n"], seed), None, family, p)
        if family == "k-tree":
            return Generated(k_tree(p["k"], p["n"], seed), None, family, p)
        if family == "random-maximal-planar":
            return random_maximal_planar(p["n"], seed)
        if family == "series-parallel":
            return series_parallel(p["n"], seed)
        if family == "gnp":
            return Generated(random_graph(p["n"], p.get("p", 0.5), seed), None, family, p)
    except KeyError as exc:
        raise InputError(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    raise InputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
