"""Weak and strong r-reachability, generalised colouring numbers, and the exact oracles.

Radius ``INF`` (``math.inf``) means unbounded; every such query is answered with ``r = n - 1``,
which is the longest a simple path can be.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Literal, Sequence

from .errors import CapacityError, InputError
from .graph import Graph, components, induced_subgraph
from .order import LinearOrder

INF = math.inf
Mode = Literal["weak", "strong"]

EXACT_GCN_CAP = 10
TREEWIDTH_CAP = 16
TREEDEPTH_CAP = 16


def normalize_radius(r: int | float | None, n: int) -> int:
    if r is None or r == INF:
        return max(n - 1, 0)
    if not float(r).is_integer() or r < 0:
        raise InputError(f"radius must be a non-negative integer or infinity, got {r!r}")
    return int(r)


def _check_mode(mode: str) -> None:
    if mode not in ("weak", "strong"):
        raise InputError(f"mode must be 'weak' or 'strong', got {mode!r}")


def _check_order(G: Graph, L: LinearOrder) -> None:
    if len(L) != G.n:
        raise InputError(f"order has {len(L)} vertices, graph has {G.n}")


# --- single-vertex reachability ------------------------------------------------------------


def wreach(G: Graph, L: LinearOrder, v: int, r: int | float) -> set[int]:
    """Vertices weakly ``r``-reachable from ``v``.

    Walks out of ``v`` carrying the smallest position seen so far; a walk reaching ``x`` with
    ``x`` as its minimum certifies ``x``.  A state is dropped when another walk reached the same
    vertex no later and with a minimum that is no smaller.
    """
    G.check_vertex(v)
    _check_order(G, L)
    r = normalize_radius(r, G.n)
    pos = L.position
    # best[x]: list of (dist, min position) labels that are pairwise non-dominated
    best: dict[int, list[tuple[int, int]]] = {v: [(0, pos[v])]}
    found = {v}
    queue = deque([(v, 0, pos[v])])
    while queue:
        x, d, low = queue.popleft()
        if d == r:
            continue
        for y in G.nbrs[x]:
            nd, nlow = d + 1, min(low, pos[y])
            labels = best.setdefault(y, [])
            if any(bd <= nd and bl >= nlow for bd, bl in labels):
                continue
            labels[:] = [(bd, bl) for bd, bl in labels if not (nd <= bd and nlow >= bl)]
            labels.append((nd, nlow))
            if nlow == pos[y]:
                found.add(y)
            queue.append((y, nd, nlow))
    return found


def sreach(G: Graph, L: LinearOrder, v: int, r: int | float) -> set[int]:
    """Vertices strongly ``r``-reachable from ``v`` (``v`` included)."""
    G.check_vertex(v)
    _check_order(G, L)
    r = normalize_radius(r, G.n)
    return _sreach(G, L.position, v, r)


def _sreach(G: Graph, pos: Sequence[int], v: int, r: int) -> set[int]:
    pv = pos[v]
    out = {v}
    if r == 0:
        return out
    depth = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        d = depth[x]
        for y in G.nbrs[x]:
            if pos[y] < pv:
                out.add(y)
            elif y not in depth and d + 1 < r:
                depth[y] = d + 1
                queue.append(y)
    return out


# --- whole-order evaluation ----------------------------------------------------------------


def weak_reach_sets(G: Graph, L: LinearOrder, r: int | float) -> list[set[int]]:
    """``WReach_r[G, L, v]`` for every ``v``.

    ``u`` is weakly reachable from ``v`` iff ``v`` is within distance ``r`` of ``u`` in the
    subgraph induced by the vertices not smaller than ``u``; one bounded BFS per ``u``.
    """
    _check_order(G, L)
    r = normalize_radius(r, G.n)
    pos = L.position
    out: list[set[int]] = [set() for _ in range(G.n)]
    for u in range(G.n):
        pu = pos[u]
        depth = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            out[x].add(u)
            d = depth[x]
            if d == r:
                continue
            for y in G.nbrs[x]:
                if y not in depth and pos[y] > pu:
                    depth[y] = d + 1
                    queue.append(y)
    return out


def strong_reach_sets(G: Graph, L: LinearOrder, r: int | float) -> list[set[int]]:
    _check_order(G, L)
    r = normalize_radius(r, G.n)
    return [_sreach(G, L.position, v, r) for v in range(G.n)]


def reach_sets(G: Graph, L: LinearOrder, r: int | float, mode: Mode) -> list[set[int]]:
    _check_mode(mode)
    return weak_reach_sets(G, L, r) if mode == "weak" else strong_reach_sets(G, L, r)


def cost_of_order(G: Graph, L: LinearOrder, r: int | float, mode: Mode) -> int:
    """``max_v |WReach_r[G, L, v]|`` (weak) or ``max_v |SReach_r[G, L, v]|`` (strong)."""
    return max((len(s) for s in reach_sets(G, L, r, mode)), default=0)


# --- exact minimisation over orders -------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _masks(G: Graph) -> list[int]:
    return [sum(1 << w for w in G.nbrs[v]) for v in range(G.n)]


def _ball(adj: Sequence[int], v: int, allowed: int, r: int) -> int:
    seen = frontier = 1 << v
    for _ in range(r):
        nxt = 0
        x = frontier
        while x:
            low = x & -x
            nxt |= adj[low.bit_length() - 1]
            x ^= low
        frontier = nxt & allowed & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def _strong_step(adj: Sequence[int], placed: int, v: int, r: int, full: int) -> int:
    """|SReach| of ``v`` when ``placed`` is exactly the set of vertices before ``v``."""
    later = full & ~placed & ~(1 << v)
    seen = frontier = 1 << v
    hit = 0
    for _ in range(r):
        nxt = 0
        x = frontier
        while x:
            low = x & -x
            nxt |= adj[low.bit_length() - 1]
            x ^= low
        hit |= nxt & placed
        frontier = nxt & later & ~seen
        if not frontier:
            break
        seen |= frontier
    return _popcount(hit) + 1


def exact_gcn(G: Graph, r: int | float, mode: Mode, cap: int = EXACT_GCN_CAP) -> tuple[int, LinearOrder]:
    """Exact ``col_r`` (strong) or ``wcol_r`` (weak) with the lexicographically least optimal order.

    Orders are built from the first position upward.  In strong mode the cost of the vertex
    placed next depends only on the set already placed, so the search is a memoised recursion
    over subsets.  In weak mode placing ``u`` adds ``u`` to the reach set of every vertex in its
    ``r``-ball among the unplaced vertices, so the state also carries those running counts;
    that search is branch-and-bound with a fail-high memo.
    """
    _check_mode(mode)
    n = G.n
    if n > cap:
        raise CapacityError(f"exact_gcn is capped at {cap} vertices, got {n}; raise cap= to override")
    if n == 0:
        return 0, LinearOrder([])
    r = normalize_radius(r, n)
    adj = _masks(G)
    full = (1 << n) - 1
    if mode == "strong":
        return _exact_strong(adj, n, r, full)
    return _exact_weak(adj, n, r, full)


def _exact_strong(adj: list[int], n: int, r: int, full: int) -> tuple[int, LinearOrder]:
    memo: dict[int, int] = {full: 0}

    def best(placed: int) -> int:
        got = memo.get(placed)
        if got is not None:
            return got
        value = n + 1
        for v in range(n):
            if placed >> v & 1:
                continue
            here = _strong_step(adj, placed, v, r, full)
            if here >= value:
                continue
            value = min(value, max(here, best(placed | 1 << v)))
        memo[placed] = value
        return value

    value = best(0)
    seq = []
    placed = 0
    for _ in range(n):
        for v in range(n):
            if not placed >> v & 1 and max(_strong_step(adj, placed, v, r, full), best(placed | 1 << v)) <= value:
                seq.append(v)
                placed |= 1 << v
                break
    return value, LinearOrder(seq)


def _exact_weak(adj: list[int], n: int, r: int, full: int) -> tuple[int, LinearOrder]:
    # memo value: (v, exact). exact -> v is the optimum from the state; otherwise v is a lower bound
    memo: dict[tuple[int, tuple[int, ...]], tuple[int, bool]] = {}

    def place(placed: int, counts: tuple[int, ...], u: int) -> tuple[int, tuple[int, ...]]:
        ball = _ball(adj, u, full & ~placed, r)
        new = list(counts)
        final = counts[u] + 1
        x = ball & ~(1 << u)
        while x:
            low = x & -x
            new[low.bit_length() - 1] += 1
            x ^= low
        new[u] = 0
        return final, tuple(new)

    def search(placed: int, counts: tuple[int, ...], cap: int) -> int:
        if placed == full:
            return 0
        key = (placed, counts)
        hit = memo.get(key)
        if hit is not None and (hit[1] or hit[0] >= cap):
            return hit[0]
        free = [v for v in range(n) if not placed >> v & 1]
        bound = max(counts[v] for v in free) + 1
        if bound >= cap:
            memo[key] = (bound, False)
            return bound
        children = []
        for u in free:
            final, new = place(placed, counts, u)
            children.append((final, u, new))
        children.sort()
        limit = cap
        for final, u, new in children:
            if final >= limit:
                break
            value = max(final, search(placed | 1 << u, new, limit))
            if value < limit:
                limit = value
                if limit <= bound:
                    break
        if limit < cap:
            memo[key] = (limit, True)
        else:
            memo[key] = (cap, False)
        return limit

    start = (0,) * n
    value = search(0, start, n + 1)
    seq = []
    placed, counts = 0, start
    for _ in range(n):
        for u in range(n):
            if placed >> u & 1:
                continue
            final, new = place(placed, counts, u)
            if final <= value and search(placed | 1 << u, new, value + 1) <= value:
                seq.append(u)
                placed, counts = placed | 1 << u, new
                break
    return value, LinearOrder(seq)


# --- fill-in, elimination width, tree-width, tree-depth -----------------------------------


@dataclass
class FillInGraph:
    base: Graph
    added_edges: frozenset[frozenset[int]]

    def graph(self) -> Graph:
        return self.base.add_edges(tuple(sorted(e)) for e in self.added_edges)


def fill_in(G: Graph, L: LinearOrder) -> FillInGraph:
    """Fill-in ``G_L``: from the largest vertex down, make its smaller neighbours a clique."""
    _check_order(G, L)
    pos = L.position
    adj = [set(a) for a in G.adj]
    added: set[frozenset[int]] = set()
    for v in reversed(L.sequence):
        smaller = [u for u in adj[v] if pos[u] < pos[v]]
        for i, a in enumerate(smaller):
            for b in smaller[i + 1:]:
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
                    added.add(frozenset((a, b)))
    return FillInGraph(G, frozenset(added))


def fill_in_by_reachability(G: Graph, L: LinearOrder) -> FillInGraph:
    """Fill-in built from the path characterisation: ``v`` is joined to every smaller vertex it
    reaches through vertices larger than itself."""
    _check_order(G, L)
    added: set[frozenset[int]] = set()
    for v in range(G.n):
        for u in _sreach(G, L.position, v, max(G.n - 1, 0)):
            if u != v and not G.has_edge(u, v):
                added.add(frozenset((u, v)))
    return FillInGraph(G, frozenset(added))


def elimination_width(G: Graph, L: LinearOrder) -> int:
    """Clique number of ``G_L`` minus one.

    ``L`` read backwards is a perfect elimination order of ``G_L``, so the largest clique is a
    vertex together with its smaller fill-in neighbours.
    """
    if G.n == 0:
        return -1
    H = fill_in(G, L).graph()
    pos = L.position
    return max(sum(1 for u in H.adj[v] if pos[u] < pos[v]) for v in range(G.n))


def treewidth_exact(G: Graph, cap: int = TREEWIDTH_CAP) -> int:
    """Tree-width as the minimum elimination width, by branch and bound over elimination orders.

    Works on explicit elimination graphs: eliminating a vertex costs its current degree and turns
    its neighbourhood into a clique.  The upper bound starts from the min-degree heuristic; the
    degeneracy of the remaining graph is the lower bound.  States are memoised on the remaining
    vertex set together with the width already paid.
    """
    if G.n > cap:
        raise CapacityError(f"treewidth_exact is capped at {cap} vertices, got {G.n}")
    if G.n == 0:
        return -1
    return max(_treewidth_connected(induced_subgraph(G, c)[0]) for c in components(G))


def _degeneracy(adj: dict[int, set[int]]) -> int:
    deg = {v: len(a) for v, a in adj.items()}
    alive = set(adj)
    k = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        k = max(k, deg[v])
        alive.remove(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
    return k


def _eliminate(adj: dict[int, set[int]], v: int) -> dict[int, set[int]]:
    nb = adj[v]
    out = {x: set(a) for x, a in adj.items() if x != v}
    for a in nb:
        out[a].discard(v)
        out[a] |= nb - {a}
    return out


def _treewidth_connected(G: Graph) -> int:
    adj0 = {v: set(G.adj[v]) for v in range(G.n)}
    # min-degree heuristic for the initial upper bound
    adj = adj0
    ub = 0
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        ub = max(ub, len(adj[v]))
        adj = _eliminate(adj, v)
    best = ub
    seen: dict[frozenset[int], int] = {}

    def dfs(adj: dict[int, set[int]], paid: int) -> None:
        nonlocal best
        if paid >= best:
            return
        if len(adj) - 1 <= paid:
            best = paid
            return
        key = frozenset(adj)
        if seen.get(key, best + 1) <= paid:
            return
        seen[key] = paid
        if max(paid, _degeneracy(adj)) >= best:
            return
        # a simplicial vertex of degree <= paid can always be eliminated first
        for v in sorted(adj):
            nb = adj[v]
            if len(nb) <= paid and all(nb - {a} <= adj[a] for a in nb):
                dfs(_eliminate(adj, v), paid)
                return
        for v in sorted(adj, key=lambda x: (len(adj[x]), x)):
            w = max(paid, len(adj[v]))
            if w < best:
                dfs(_eliminate(adj, v), w)

    dfs(adj0, 0)
    return best


def treedepth_exact(G: Graph, cap: int = TREEDEPTH_CAP) -> int:
    """Tree-depth from its recursive definition, memoised on vertex subsets.

    ``td`` of a connected graph is one more than the minimum over its vertices ``v`` of
    ``td(G - v)``; a disconnected graph takes the maximum over its components.
    """
    if G.n > cap:
        raise CapacityError(f"treedepth_exact is capped at {cap} vertices, got {G.n}")
    adj = _masks(G)
    memo: dict[int, int] = {0: 0}

    def split(mask: int) -> list[int]:
        parts = []
        rest = mask
        while rest:
            low = rest & -rest
            comp = _ball(adj, low.bit_length() - 1, mask, G.n)
            parts.append(comp)
            rest &= ~comp
        return parts

    def td(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        parts = split(mask)
        if len(parts) > 1:
            value = max(td(p) for p in parts)
        else:
            value = G.n + 1
            x = mask
            while x:
                low = x & -x
                value = min(value, 1 + td(mask & ~low))
                x ^= low
        memo[mask] = value
        return value

    return td((1 << G.n) - 1)


def check_binomial_bound(G: Graph, L: LinearOrder, r: int) -> bool:
    """Whether every weak reach set has size at most ``C(r + k, k)``, ``k`` the elimination width."""
    if G.n == 0:
        return True
    k = elimination_width(G, L)
    return cost_of_order(G, L, r, "weak") <= math.comb(r + k, k)
