"""Minor models and a small exact minor search used to certify builder outputs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import CapacityError, InputError
from .graph import Graph, is_connected_set, is_path

MINOR_VERTEX_GUARD = 64


@dataclass
class MinorModel:
    """Branch sets for the vertices of a pattern graph, optionally with paths realising its edges."""

    branch_sets: dict[int, frozenset[int]]
    edge_paths: dict[frozenset[int], tuple[int, ...]] = field(default_factory=dict)

    def as_lists(self) -> list[list[int]]:
        return [sorted(self.branch_sets[h]) for h in sorted(self.branch_sets)]


def is_valid_model(G: Graph, H: Graph, model: MinorModel | Mapping[int, Iterable[int]]) -> bool:
    """Check branch sets are disjoint, connected and joined along every edge of ``H``.

    Edge paths, when present, must be paths of ``G`` from one branch set to the other whose
    interiors avoid every branch set and every other path's interior.
    """
    if isinstance(model, MinorModel):
        sets = {h: set(b) for h, b in model.branch_sets.items()}
        paths = model.edge_paths
    else:
        sets = {h: set(b) for h, b in model.items()}
        paths = {}
    if set(sets) != set(range(H.n)):
        return False
    used: set[int] = set()
    for b in sets.values():
        if not b or used & b or not all(0 <= v < G.n for v in b) or not is_connected_set(G, b):
            return False
        used |= b
    interiors: set[int] = set()
    for e, path in paths.items():
        i, j = sorted(e)
        if not H.has_edge(i, j) or not is_path(G, path):
            return False
        ends = {path[0], path[-1]}
        if not ((path[0] in sets[i] and path[-1] in sets[j]) or (path[0] in sets[j] and path[-1] in sets[i])):
            return False
        inner = set(path[1:-1])
        if inner & used or inner & interiors or inner & ends:
            return False
        interiors |= inner
    for i, j in H.edges():
        if frozenset((i, j)) in paths:
            continue
        if not any(G.adj[u] & sets[j] for u in sets[i]):
            return False
    return True


def _subgraph_map(hn: Sequence[int], hadj: Sequence[int], qadj: Sequence[int]) -> list[int] | None:
    """Injective map of pattern vertices into quotient vertices preserving edges (not induced)."""
    k = len(hn)
    q = len(qadj)
    hdeg = [bin(hadj[h]).count("1") for h in range(k)]
    qdeg = [bin(qadj[x]).count("1") for x in range(q)]
    # high-degree pattern vertices first
    seq = sorted(range(k), key=lambda h: -hdeg[h])
    image = [-1] * k
    taken = 0

    def place(idx: int) -> bool:
        nonlocal taken
        if idx == k:
            return True
        h = seq[idx]
        need = [image[g] for g in seq[:idx] if hadj[h] >> g & 1]
        for x in range(q):
            if taken >> x & 1 or qdeg[x] < hdeg[h]:
                continue
            if all(qadj[x] >> y & 1 for y in need):
                image[h] = x
                taken |= 1 << x
                if place(idx + 1):
                    return True
                taken &= ~(1 << x)
                image[h] = -1
        return False

    return list(image) if place(0) else None


def find_minor(G: Graph, H: Graph, guard: int = MINOR_VERTEX_GUARD) -> MinorModel | None:
    """Return a model of ``H`` in ``G`` or ``None``.

    Searches over connected partitions of ``V(G)`` reachable by contracting edges, testing at each
    one whether ``H`` is a (not necessarily induced) subgraph of the quotient.  Partitions are
    memoised; a branch is abandoned once it has fewer blocks or quotient edges than ``H``.
    Exponential in the worst case; ``guard`` bounds ``|V(G)|``.
    """
    if G.n > guard:
        raise CapacityError(f"find_minor limited to {guard} host vertices, got {G.n}")
    if H.n == 0:
        return MinorModel({})
    if H.n > G.n or H.m > G.m:
        return None
    hadj = [sum(1 << w for w in H.nbrs[h]) for h in range(H.n)]
    gadj = [sum(1 << w for w in G.nbrs[v]) for v in range(G.n)]
    seen: set[frozenset[int]] = set()

    def quotient(blocks: tuple[int, ...]) -> list[int]:
        qadj = []
        for b in blocks:
            nb = 0
            x = b
            while x:
                low = x & -x
                nb |= gadj[low.bit_length() - 1]
                x ^= low
            nb &= ~b
            qadj.append(sum(1 << j for j, c in enumerate(blocks) if c & nb))
        return qadj

    def search(blocks: tuple[int, ...]) -> MinorModel | None:
        key = frozenset(blocks)
        if key in seen:
            return None
        seen.add(key)
        qadj = quotient(blocks)
        qm = sum(bin(a).count("1") for a in qadj) // 2
        if len(blocks) < H.n or qm < H.m:
            return None
        image = _subgraph_map(range(H.n), hadj, qadj)
        if image is not None:
            return MinorModel({h: frozenset(_bits(blocks[image[h]])) for h in range(H.n)})
        if len(blocks) == H.n:
            return None
        for i in range(len(blocks)):
            for j in _bits(qadj[i]):
                if j <= i:
                    continue
                merged = blocks[:i] + (blocks[i] | blocks[j],) + blocks[i + 1:j] + blocks[j + 1:]
                found = search(merged)
                if found is not None:
                    return found
        return None

    start = tuple(1 << v for v in range(G.n))
    return search(start)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def complete_graph(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def model_from_lists(sets: Sequence[Iterable[int]]) -> MinorModel:
    if any(not list(s) for s in sets):
        raise InputError("branch sets must be non-empty")
    return MinorModel({h: frozenset(s) for h, s in enumerate(sets)})
