"""Plane embeddings as rotation systems and the planar ordering constructions built on them.

Rotations list each vertex's neighbours counter-clockwise.  A dart ``(u, w)`` is followed in its
face by ``(w, x)`` where ``x`` comes right after ``u`` in the rotation of ``w``; with
counter-clockwise rotations this walks bounded faces clockwise and the outer face
counter-clockwise.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Sequence

from .decomposition import Decomposition
from .errors import EmbeddingError, InputError, InternalConsistencyError, NotMaximalError
from .graph import Graph, Tree, components, lex_bfs, shortest_path
from .order import LinearOrder
from .reach import sreach


class PlanarEmbedding:
    """Rotation system plus a distinguished outer face, named by one of its darts."""

    def __init__(self, rotation: Sequence[Sequence[int]], outer: tuple[int, int] | None = None):
        self.rotation: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotation)
        self.n = len(self.rotation)
        self._index = [{w: i for i, w in enumerate(r)} for r in self.rotation]
        for u, r in enumerate(self.rotation):
            if any(not (0 <= w < self.n) or u not in self._index[w] for w in r):
                raise EmbeddingError(f"rotation of {u} lists a vertex that does not list {u} back")
        self.faces: list[tuple[int, ...]] = []
        self.dart_face: dict[tuple[int, int], int] = {}
        self._trace()
        if outer is None:
            outer = (0, self.rotation[0][0]) if self.n and self.rotation[0] else None
        if outer is not None and outer not in self.dart_face:
            raise EmbeddingError(f"outer dart {outer} is not an edge")
        self.outer = outer
        self.outer_face = self.dart_face[outer] if outer is not None else 0

    def succ(self, w: int, u: int) -> int:
        """Neighbour of ``w`` after ``u`` counter-clockwise."""
        r = self.rotation[w]
        return r[(self._index[w][u] + 1) % len(r)]

    def pred(self, w: int, u: int) -> int:
        r = self.rotation[w]
        return r[(self._index[w][u] - 1) % len(r)]

    def next_dart(self, u: int, w: int) -> tuple[int, int]:
        return w, self.succ(w, u)

    def _trace(self) -> None:
        for u in range(self.n):
            for w in self.rotation[u]:
                if (u, w) in self.dart_face:
                    continue
                fid = len(self.faces)
                walk = []
                dart = (u, w)
                while dart not in self.dart_face:
                    self.dart_face[dart] = fid
                    walk.append(dart[0])
                    dart = self.next_dart(*dart)
                if dart != (u, w):
                    raise EmbeddingError("rotation system does not define a permutation of darts")
                self.faces.append(tuple(walk))
        if self.n == 1 and not self.faces:
            self.faces.append(())

    def face_darts(self, fid: int) -> list[tuple[int, int]]:
        walk = self.faces[fid]
        return [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]

    def to_lines(self) -> str:
        out = [f"{v}: " + " ".join(map(str, r)) for v, r in enumerate(self.rotation)]
        if self.outer is not None:
            out.append(f"outer: {self.outer[0]} {self.outer[1]}")
        return "\n".join(out) + "\n"


def validate_embedding(G: Graph, rotation: Sequence[Sequence[int]] | PlanarEmbedding,
                       outer: tuple[int, int] | None = None, maximal: bool = False) -> PlanarEmbedding:
    """Check that ``rotation`` is a plane embedding of the connected graph ``G``.

    Faces are traced and Euler's formula is checked.  With ``maximal`` every face must also be a
    triangle and ``|E| = 3|V| - 6``.
    """
    if isinstance(rotation, PlanarEmbedding):
        outer = rotation.outer if outer is None else outer
        rotation = rotation.rotation
    if len(rotation) != G.n:
        raise EmbeddingError(f"rotation covers {len(rotation)} vertices, graph has {G.n}")
    for v, r in enumerate(rotation):
        if len(r) != len(set(r)) or set(r) != set(G.nbrs[v]):
            raise EmbeddingError(f"rotation of {v} is not a cyclic order of its neighbours")
    if G.n == 0 or len(components(G)) != 1:
        raise InputError("embedding checks need a connected non-empty graph")
    emb = PlanarEmbedding(rotation, outer)
    if G.n - G.m + len(emb.faces) != 2:
        raise EmbeddingError(f"Euler check failed: {G.n} - {G.m} + {len(emb.faces)} != 2")
    if maximal:
        if G.n < 3 or G.m != 3 * G.n - 6 or any(len(f) != 3 for f in emb.faces):
            raise NotMaximalError("embedding is not a triangulation")
    return emb


def embedding_from_coordinates(G: Graph, coords: Sequence[tuple[float, float]]) -> PlanarEmbedding:
    """Rotation by angle around each vertex; the outer face is the one walked counter-clockwise."""
    rotation = []
    for v in range(G.n):
        x0, y0 = coords[v]
        rotation.append(sorted(G.nbrs[v], key=lambda w: math.atan2(coords[w][1] - y0, coords[w][0] - x0)))
    emb = PlanarEmbedding(rotation)

    def area(face: tuple[int, ...]) -> float:
        return sum(coords[a][0] * coords[b][1] - coords[b][0] * coords[a][1]
                   for a, b in zip(face, face[1:] + face[:1]))

    outer = max(range(len(emb.faces)), key=lambda f: area(emb.faces[f]))
    return validate_embedding(G, emb.rotation, emb.face_darts(outer)[0] if emb.faces[outer] else None)


# --- edits on rotation systems ---------------------------------------------------------------


def _insert_after(rot: list[list[int]], w: int, after: int, x: int) -> None:
    r = rot[w]
    r.insert(r.index(after) + 1, x)


def insert_vertex_in_triangle(rot: list[list[int]], x: int, a: int, b: int, c: int) -> None:
    """Put new vertex ``x`` inside the face walked ``a -> b -> c``, joined to all three."""
    _insert_after(rot, b, a, x)
    _insert_after(rot, c, b, x)
    _insert_after(rot, a, c, x)
    rot.append([a, c, b])


def insert_vertex_on_dart(rot: list[list[int]], x: int, a: int, b: int) -> None:
    """Put new vertex ``x`` in the face of dart ``a -> b``, joined to ``a`` and ``b``."""
    _insert_after(rot, b, a, x)
    ra = rot[a]
    ra.insert(ra.index(b), x)
    rot.append([a, b])


def flip_edge(rot: list[list[int]], u: int, v: int) -> tuple[int, int] | None:
    """Replace ``u-v`` by the other diagonal of its two triangles, if that keeps things simple."""
    def succ(w: int, y: int) -> int:
        r = rot[w]
        return r[(r.index(y) + 1) % len(r)]

    w, z = succ(v, u), succ(u, v)
    if w == z or z in rot[w] or len(rot[u]) <= 3 or len(rot[v]) <= 3:
        return None
    if succ(w, v) != u or succ(z, u) != v:
        return None  # not two triangles
    rot[u].remove(v)
    rot[v].remove(u)
    _insert_after(rot, w, v, z)
    _insert_after(rot, z, u, w)
    return w, z


def triangulate(G: Graph, emb: PlanarEmbedding) -> tuple[Graph, PlanarEmbedding]:
    """Add chords until every face is a triangle; original edges and the outer dart are kept.

    Each face walk ``w_0 w_1 ... w_{k-1}`` is cut by a chord ``w_i w_{i+2}`` for some ``i`` with
    the two ends distinct and not yet adjacent, splitting off the triangle at ``w_{i+1}``.
    """
    emb = validate_embedding(G, emb)
    if G.n < 3:
        raise InputError("triangulation needs at least three vertices")
    rot = [list(r) for r in emb.rotation]
    adj = [set(G.nbrs[v]) for v in range(G.n)]
    extra = []
    for face in emb.faces:
        walk = list(face)
        while len(walk) > 3:
            k = len(walk)
            for i in range(k):
                a, mid, b = walk[i], walk[(i + 1) % k], walk[(i + 2) % k]
                if a != b and b not in adj[a]:
                    break
            else:
                raise EmbeddingError(f"cannot add a simple chord to face {face}")
            # corners: at a between its predecessor and mid; at b between mid and its successor
            ra = rot[a]
            ra.insert(ra.index(mid), b)
            _insert_after(rot, b, mid, a)
            adj[a].add(b)
            adj[b].add(a)
            extra.append((a, b))
            del walk[(i + 1) % k]
    H = G.add_edges(extra)
    return H, validate_embedding(H, rot, emb.outer, maximal=True)


# --- width-2 isometric paths decomposition ----------------------------------------------------


@dataclass
class RegionState:
    component: list[int]
    boundary: list[tuple[int, int]]
    parts: tuple[int, int]
    apexes: tuple[int, int]


def ipd_maximal_planar(G: Graph, emb: PlanarEmbedding, regions: list[RegionState] | None = None) -> Decomposition:
    """Isometric paths decomposition of width at most 2 of a triangulation.

    The first two parts are the least edge of the outer face and its third vertex.  Every later
    component sits in a region bounded by a cycle covered by two earlier paths plus two further
    edges; the triangles on those two edges reach into the component at ``v_1`` and ``v_2``, and the
    next part is a shortest ``v_1``-``v_2`` path inside the component.
    """
    emb = validate_embedding(G, emb, maximal=True)
    a, b, c = emb.faces[emb.outer_face]
    u, v = min((min(p), max(p)) for p in ((a, b), (b, c), (a, c)))
    w = ({a, b, c} - {u, v}).pop()
    parts: list[tuple[int, ...]] = [(u, v), (w,)]
    own = [-1] * G.n
    own[u] = own[v] = 0
    own[w] = 1
    path_edges: list[set[frozenset[int]]] = [{frozenset((u, v))}, set()]
    heap = [(min(C), sorted(C)) for C in components(G, removed=(u, v, w))]
    heapq.heapify(heap)
    while heap:
        _, comp_list = heapq.heappop(heap)
        C = set(comp_list)
        attached = sorted({own[x] for z in C for x in G.nbrs[z] if own[x] >= 0})
        if len(attached) != 2:
            raise InternalConsistencyError(f"region at {min(C)} touches parts {attached}")
        boundary = set()
        for z in C:
            for x in G.nbrs[z]:
                y = emb.succ(x, z)
                if x not in C and y not in C:
                    boundary.add(frozenset((x, y)))
        if any(own[x] not in attached for e in boundary for x in e):
            raise InternalConsistencyError(f"boundary of region at {min(C)} leaves its two paths")
        loose = sorted(tuple(sorted(e)) for e in boundary if not any(e in path_edges[p] for p in attached))
        if len(loose) != 2:
            raise InternalConsistencyError(f"region at {min(C)} has {len(loose)} edges off its paths")
        apexes = []
        for x, y in loose:
            inside = [z for z in (emb.succ(y, x), emb.succ(x, y)) if z in C]
            if len(inside) != 1:
                raise InternalConsistencyError(f"edge {x}-{y} does not face the region exactly once")
            apexes.append(inside[0])
        if regions is not None:
            regions.append(RegionState(sorted(C), loose, (attached[0], attached[1]), (apexes[0], apexes[1])))
        path = tuple(shortest_path(G, apexes[0], apexes[1], C))
        idx = len(parts)
        parts.append(path)
        path_edges.append({frozenset(e) for e in zip(path, path[1:])})
        for x in path:
            own[x] = idx
        for child in components(G, within=C - set(path)):
            heapq.heappush(heap, (min(child), sorted(child)))
    return Decomposition(parts, path_parts=True)


# --- face tree and the LexBFS ordering --------------------------------------------------------


@dataclass
class FaceTree:
    """Faces of a triangulation joined across edges outside a spanning tree ``S``."""

    faces: list[tuple[int, ...]]
    adj: list[list[int]]
    bags: list[frozenset[int]]
    root: int
    # faces joined by each tree edge, keyed by the primal edge
    crossing: dict[frozenset[int], tuple[int, int]] = field(default_factory=dict)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2


def check_tree_decomposition(G: Graph, adj: Sequence[Sequence[int]], bags: Sequence[frozenset[int]]) -> bool:
    """Bags cover all vertices and edges, and each vertex's bags induce a connected subtree."""
    holder: list[list[int]] = [[] for _ in range(G.n)]
    for t, bag in enumerate(bags):
        for x in bag:
            holder[x].append(t)
    if any(not h for h in holder):
        return False
    for x, y in G.edges():
        if not any(y in bags[t] for t in holder[x]):
            return False
    for x in range(G.n):
        nodes = set(holder[x])
        start = holder[x][0]
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in nodes and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != nodes:
            return False
    return True


def build_face_tree(G: Graph, emb: PlanarEmbedding, S: Tree) -> FaceTree:
    emb = validate_embedding(G, emb, maximal=True)
    tree_edges = S.edges()
    if len(tree_edges) != G.n - 1:
        raise InputError("S must be a spanning tree")
    F = len(emb.faces)
    adj: list[list[int]] = [[] for _ in range(F)]
    crossing = {}
    for x, y in G.edges():
        e = frozenset((x, y))
        if e in tree_edges:
            continue
        f, g = emb.dart_face[(x, y)], emb.dart_face[(y, x)]
        adj[f].append(g)
        adj[g].append(f)
        crossing[e] = (f, g)
    for a in adj:
        a.sort()
    paths = {x: set(S.root_path(x)) for x in range(G.n)}
    bags = [frozenset(set().union(*(paths[x] for x in face))) for face in emb.faces]
    ft = FaceTree(list(emb.faces), adj, bags, emb.outer_face, crossing)
    # connected with F - 1 edges
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        for s in adj[t]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    if F != 2 * G.n - 4 or ft.edge_count != F - 1 or len(seen) != F:
        raise InternalConsistencyError("faces joined across non-tree edges do not form a tree")
    if not check_tree_decomposition(G, adj, bags):
        raise InternalConsistencyError("face tree bags are not a tree-decomposition")
    return ft


def _face_dfs(ft: FaceTree) -> tuple[list[int], list[int]]:
    """Preorder of the face tree from the outer face, children by increasing id, and parents."""
    parent = [-1] * len(ft.faces)
    order = []
    stack = [ft.root]
    seen = {ft.root}
    while stack:
        t = stack.pop()
        order.append(t)
        for s in reversed(ft.adj[t]):
            if s not in seen:
                seen.add(s)
                parent[s] = t
                stack.append(s)
    return order, parent


@dataclass
class PlanarOrderConstruction:
    order: LinearOrder
    tree: Tree
    face_tree: FaceTree
    first_face: list[int]
    dfs: list[int]
    parent: list[int]


def lexbfs_planar_construction(G: Graph, emb: PlanarEmbedding, root: int = 0) -> PlanarOrderConstruction:
    """Order a triangulation along the root paths of a LexBFS tree, face by face.

    The root paths to the outer-face vertices come first (by vertex id, each from the root
    outward); then faces are visited in depth-first order of the face tree, and at each face the
    still unordered vertices, which lie on a single root path, are appended by depth.
    """
    emb = validate_embedding(G, emb, maximal=True)
    G.check_vertex(root)
    S, _ = lex_bfs(G, root)
    ft = build_face_tree(G, emb, S)
    dfs, parent = _face_dfs(ft)
    placed = [False] * G.n
    seq: list[int] = []
    first_face = [-1] * G.n
    for x in sorted(ft.faces[ft.root]):
        for y in S.root_path(x):
            if not placed[y]:
                placed[y] = True
                seq.append(y)
                first_face[y] = ft.root
    for t in dfs[1:]:
        fresh = [(x, [y for y in S.root_path(x) if not placed[y]]) for x in ft.faces[t]]
        carrying = [(x, ys) for x, ys in fresh if ys]
        if len(carrying) > 1:
            raise InternalConsistencyError(f"face {ft.faces[t]} has {len(carrying)} paths with unordered vertices")
        for _, ys in carrying:
            for y in ys:
                placed[y] = True
                seq.append(y)
                first_face[y] = t
    return PlanarOrderConstruction(LinearOrder(seq), S, ft, first_face, dfs, parent)


def lexbfs_planar_order(G: Graph, emb: PlanarEmbedding, root: int = 0) -> LinearOrder:
    return lexbfs_planar_construction(G, emb, root).order


def check_carord(G: Graph, emb: PlanarEmbedding, S: Tree, L: LinearOrder, vertices: Sequence[int] | None = None) -> bool:
    """For each ``u`` whose first face ``f(u)`` is not the outer face, every vertex in the bag of
    ``f(u)`` precedes in ``L`` every vertex strictly inside the fundamental cycle closed by the
    edge through which the face-tree search entered ``f(u)``, bag vertices excepted.
    """
    ft = build_face_tree(G, emb, S)
    dfs, parent = _face_dfs(ft)
    first = [-1] * G.n
    for t in dfs:
        for x in ft.bags[t]:
            if first[x] == -1:
                first[x] = t
    children: list[list[int]] = [[] for _ in ft.faces]
    for t in dfs[1:]:
        children[parent[t]].append(t)
    entry = {}
    for e, (f, g) in ft.crossing.items():
        if parent[f] == g:
            entry[f] = e
        elif parent[g] == f:
            entry[g] = e
    pos = L.position
    checked: dict[int, bool] = {}
    for u in (range(G.n) if vertices is None else vertices):
        t = first[u]
        if t == ft.root:
            continue
        if t in checked:
            if not checked[t]:
                return False
            continue
        x, y = sorted(entry[t])
        cycle = set(S.root_path(x)) ^ set(S.root_path(y)) | {x, y}
        # lowest common ancestor belongs to the cycle too
        common = set(S.root_path(x)) & set(S.root_path(y))
        cycle.add(max(common, key=lambda z: S.depth[z]))
        inside: set[int] = set()
        stack = [t]
        while stack:
            s = stack.pop()
            inside.update(ft.faces[s])
            stack.extend(children[s])
        inside -= cycle
        bag = ft.bags[t]
        late = max(pos[z] for z in bag)
        ok = all(pos[z] > late for z in inside - bag)
        checked[t] = ok
        if not ok:
            return False
    return True


def path_invariant_violations(G: Graph, con: PlanarOrderConstruction, r: int) -> list[dict]:
    """Per-vertex path counts behind the ``5r + 1`` bound, for ``u`` with ``f(u)`` not outer.

    With ``P_u`` the root path of ``u`` and ``P_a``, ``P_b`` the root paths to the other two
    corners of ``f(u)``: strongly reachable vertices lie on these paths, at most ``r + 1`` on
    ``P_u`` and at most ``2r`` on each of ``P_a - P_u`` and ``P_b - P_u``.
    """
    S = con.tree
    out = []
    for u in range(G.n):
        t = con.first_face[u]
        if t == con.face_tree.root:
            continue
        face = con.face_tree.faces[t]
        holder = [x for x in face if u in S.root_path(x)]
        if not holder:
            out.append({"u": u, "problem": "u on no root path of f(u)"})
            continue
        pu = set(S.root_path(u))
        others = [x for x in face if x != holder[0]]
        reach = sreach(G, con.order, u, r)
        counts = {"P_u": len(reach & pu)}
        union = set(pu)
        for name, x in zip(("P_a", "P_b"), others):
            px = set(S.root_path(x))
            union |= px
            counts[name] = len(reach & (px - pu))
        bad = counts["P_u"] > r + 1 or counts["P_a"] > 2 * r or counts["P_b"] > 2 * r or not reach <= union
        if bad:
            out.append({"u": u, "r": r, **counts, "outside": sorted(reach - union)})
    return out
