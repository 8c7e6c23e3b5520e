"""Simple undirected graphs on dense integer vertex ids, and the traversals used everywhere else.

Graphs are immutable.  Vertex deletion is expressed by passing a ``within`` vertex set to the
traversal functions instead of materialising a smaller graph; the decomposition builders delete
vertices at every step and copying would dominate their running time.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Collection, Iterable, Sequence

from .errors import InputError
from .order import LinearOrder


class Graph:
    """Finite simple undirected graph with vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "nbrs", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.nbrs: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._edges: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        return cls(len(adj), ((u, v) for u, a in enumerate(adj) for v in a if u < v))

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self.nbrs[u] if u < v)
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InputError(f"unknown vertex {v!r} (graph has {self.n} vertices)")

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges()) + [tuple(e) for e in extra if not self.has_edge(*e)])

    def remove_edges(self, gone: Iterable[tuple[int, int]]) -> "Graph":
        drop = {frozenset(e) for e in gone}
        return Graph(self.n, [e for e in self.edges() if frozenset(e) not in drop])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabelled to ``0..k-1``; returns it with the new-to-old id list."""
    old = sorted(set(vertices))
    new = {v: i for i, v in enumerate(old)}
    edges = [(new[u], new[w]) for u in old for w in G.nbrs[u] if w in new and u < w]
    return Graph(len(old), edges), old


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(G.n)):
        raise InputError("relabelling must be a permutation of the vertex ids")
    return Graph(G.n, [(perm[u], perm[v]) for u, v in G.edges()])


# --- traversal -----------------------------------------------------------------------------


def distances(G: Graph, source: int | Iterable[int], within: Collection[int] | None = None,
              limit: int | None = None) -> dict[int, int]:
    """BFS distances from one source (or several) inside ``G[within]``, up to ``limit``."""
    sources = [source] if isinstance(source, int) else list(source)
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y in G.nbrs[x]:
            if y not in dist and (within is None or y in within):
                dist[y] = d + 1
                queue.append(y)
    return dist


def closed_neighborhood(G: Graph, v: int, r: int, within: Collection[int] | None = None) -> set[int]:
    """All vertices at distance at most ``r`` from ``v``, ``v`` included."""
    G.check_vertex(v)
    if r < 0:
        raise InputError(f"radius must be non-negative, got {r}")
    if within is not None and v not in within:
        raise InputError(f"vertex {v} is not in the restricted vertex set")
    return set(distances(G, v, within, r))


@dataclass
class Tree:
    """Rooted spanning tree of (a component of) a host graph."""

    root: int
    parent: dict[int, int]
    depth: dict[int, int]
    discovery: list[int] = field(default_factory=list)

    def vertices(self) -> list[int]:
        return list(self.depth)

    def path_to_root(self, w: int) -> list[int]:
        path = [w]
        while w != self.root:
            w = self.parent[w]
            path.append(w)
        return path

    def root_path(self, w: int) -> list[int]:
        """Tree path from the root to ``w``."""
        return self.path_to_root(w)[::-1]

    def edges(self) -> set[frozenset[int]]:
        return {frozenset((w, p)) for w, p in self.parent.items()}

    def children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {v: [] for v in self.depth}
        for w in self.discovery:
            if w != self.root:
                kids[self.parent[w]].append(w)
        return kids


def bfs_tree(G: Graph, root: int, within: Collection[int] | None = None) -> Tree:
    """Breadth-first tree of the component of ``root`` in ``G[within]``.

    Neighbours are scanned in increasing id order and a vertex's parent is the vertex that
    discovered it, so the tree is deterministic.
    """
    G.check_vertex(root)
    parent: dict[int, int] = {}
    depth = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in G.nbrs[x]:
            if y not in depth and (within is None or y in within):
                depth[y] = depth[x] + 1
                parent[y] = x
                order.append(y)
                queue.append(y)
    return Tree(root, parent, depth, order)


def lex_bfs(G: Graph, root: int, within: Collection[int] | None = None) -> tuple[Tree, list[int]]:
    """Lexicographic BFS from ``root`` by partition refinement.

    Among vertices with the lexicographically largest label the smallest id is taken next.  The
    parent of a vertex is its earliest-visited neighbour, which always lies one level closer to the
    root.  Returns the tree and the visit order.
    """
    G.check_vertex(root)
    comp = set(distances(G, root, within))
    comp.discard(root)
    # cells[0] holds the highest labels; each cell is a set of unvisited vertices
    cells: list[set[int]] = [{root}] + ([comp] if comp else [])
    visited: dict[int, int] = {}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {root: 0}
    order: list[int] = []
    while cells:
        head = cells[0]
        x = min(head)
        head.remove(x)
        if not head:
            cells.pop(0)
        visited[x] = len(order)
        order.append(x)
        if x != root:
            depth[x] = depth[parent[x]] + 1
        fresh = [y for y in G.nbrs[x] if y not in visited and (within is None or y in within)]
        if not fresh:
            continue
        for y in fresh:
            parent.setdefault(y, x)
        touched = set(fresh)
        refined: list[set[int]] = []
        for cell in cells:
            inside = cell & touched
            if inside and len(inside) < len(cell):
                refined.append(inside)
                refined.append(cell - inside)
            else:
                refined.append(cell)
        cells = refined
    return Tree(root, parent, depth, order), order


def shortest_path(G: Graph, s: int, t: int, within: Collection[int] | None = None) -> list[int]:
    """A shortest ``s``-``t`` path in ``G[within]`` using BFS parents (smallest-id ties)."""
    tree = bfs_tree(G, s, within)
    if t not in tree.depth:
        raise InputError(f"vertex {t} is not reachable from {s}")
    return tree.root_path(t)


def is_path(G: Graph, P: Sequence[int]) -> bool:
    if not P or len(set(P)) != len(P):
        return False
    return all(0 <= v < G.n for v in P) and all(G.has_edge(a, b) for a, b in zip(P, P[1:]))


def is_isometric_path(G: Graph, P: Sequence[int], within: Collection[int] | None = None) -> bool:
    """True iff ``P`` is a shortest path between its endpoints (in ``G[within]`` if given)."""
    if not is_path(G, P) or (within is not None and not set(P) <= set(within)):
        raise InputError(f"{list(P)} is not a path in the graph")
    if len(P) == 1:
        return True
    dist = distances(G, P[0], within, len(P) - 1)
    return dist.get(P[-1]) == len(P) - 1


def components(G: Graph, removed: Iterable[int] = (), within: Collection[int] | None = None) -> list[set[int]]:
    """Connected components of ``G - removed`` (restricted to ``within``), by smallest vertex."""
    gone = set(removed)
    pool = set(range(G.n)) if within is None else set(within)
    pool -= gone
    out = []
    for v in sorted(pool):
        if v in pool:
            comp = set(distances(G, v, pool))
            pool -= comp
            out.append(comp)
    return out


def is_connected_set(G: Graph, vertices: Collection[int]) -> bool:
    vs = set(vertices)
    if not vs:
        return False
    return len(distances(G, next(iter(vs)), vs)) == len(vs)


def contract_parts(G: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Quotient graph with one vertex per part; parts adjacent iff some edge joins them."""
    owner: dict[int, int] = {}
    for i, part in enumerate(parts):
        part = list(part)
        if not part:
            raise InputError(f"part {i} is empty")
        for v in part:
            G.check_vertex(v)
            if v in owner:
                raise InputError(f"vertex {v} lies in parts {owner[v]} and {i}")
            owner[v] = i
        if not is_connected_set(G, part):
            raise InputError(f"part {i} does not induce a connected subgraph")
    if len(owner) != G.n:
        missing = sorted(set(range(G.n)) - set(owner))
        raise InputError(f"parts do not cover vertices {missing[:10]}")
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v]))
             for u, v in G.edges() if owner[u] != owner[v]}
    return Graph(len(parts), sorted(edges))


def degeneracy_order(G: Graph) -> tuple[LinearOrder, int]:
    """Repeatedly delete a minimum-degree vertex (smallest id on ties).

    The returned order is the reversed deletion order, so every vertex has at most ``degeneracy``
    neighbours before it.
    """
    deg = [G.degree(v) for v in range(G.n)]
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v in range(G.n):
        buckets[deg[v]].add(v)
    alive = [True] * G.n
    removal = []
    k = 0
    low = 0
    for _ in range(G.n):
        low = max(0, low - 1)
        while not buckets[low]:
            low += 1
        v = min(buckets[low])
        buckets[low].remove(v)
        k = max(k, low)
        alive[v] = False
        removal.append(v)
        for w in G.nbrs[v]:
            if alive[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return LinearOrder(removal[::-1]), k


lex_bfs_tree = lex_bfs
