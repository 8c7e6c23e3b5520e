"""Reading and writing graphs (graph6, edge lists), rotation systems, orders and decompositions."""

from __future__ import annotations

from pathlib import Path

from .decomposition import Decomposition
from .errors import InputError
from .graph import Graph
from .order import LinearOrder
from .planar import PlanarEmbedding

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise InputError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise InputError(f"graph6 cannot encode {n} vertices")


def to_graph6(G: Graph) -> str:
    """Header-less graph6: upper triangle column by column, six bits per printable byte."""
    bits = [1 if G.has_edge(i, j) else 0 for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _encode_n(G.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s or any(not 63 <= ord(ch) <= 126 for ch in s):
        raise InputError(f"not a graph6 string: {text.strip()[:40]!r}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n, rest = (vals[1] << 12) | (vals[2] << 6) | vals[3], vals[4:]
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    else:
        raise InputError("truncated graph6 size field")
    need = n * (n - 1) // 2
    if len(rest) != (need + 5) // 6:
        raise InputError(f"graph6 body has {len(rest)} bytes, expected {(need + 5) // 6} for n={n}")
    bits = [(v >> s) & 1 for v in rest for s in range(5, -1, -1)]
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[need:]):
        raise InputError("graph6 padding bits must be zero")
    return Graph(n, edges)


def read_graph6_file(path: str | Path) -> list[Graph]:
    return [from_graph6(line) for line in Path(path).read_text().splitlines() if line.strip()]


def parse_edge_list(text: str) -> Graph:
    """``u v`` per line, 0-based; ``#`` starts a comment; an optional leading line with a single
    integer fixes the vertex count (otherwise it is one more than the largest id)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            nums = [int(t) for t in toks]
        except ValueError:
            raise InputError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) == 1 and n is None and not edges:
            n = nums[0]
        elif len(nums) == 2:
            edges.append((nums[0], nums[1]))
        else:
            raise InputError(f"line {lineno}: expected 'u v', got {raw!r}")
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, edges)


def format_edge_list(G: Graph) -> str:
    return f"{G.n}\n" + "".join(f"{u} {v}\n" for u, v in G.edges())


def parse_graph(text: str) -> Graph:
    """graph6 if the first non-blank line is a graph6 string, an edge list otherwise."""
    first = next((ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), "")
    if first and (first.startswith(GRAPH6_HEADER) or all(63 <= ord(ch) <= 126 for ch in first)):
        return from_graph6(first)
    return parse_edge_list(text)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read graph file {path}: {exc.strerror}") from None
    return parse_graph(text)


def parse_rotation(text: str, n: int | None = None) -> PlanarEmbedding:
    """Lines ``v: u1 u2 ... uk`` (counter-clockwise) and optionally ``outer: u v``."""
    rot: dict[int, list[int]] = {}
    outer = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'v: neighbours', got {raw!r}")
        try:
            nums = [int(t) for t in tail.split()]
            if head.strip() == "outer":
                if len(nums) != 2:
                    raise ValueError
                outer = (nums[0], nums[1])
                continue
            v = int(head)
        except ValueError:
            raise InputError(f"line {lineno}: malformed rotation line {raw!r}") from None
        if v in rot:
            raise InputError(f"line {lineno}: vertex {v} listed twice")
        rot[v] = nums
    size = n if n is not None else 1 + max(rot, default=-1)
    if set(rot) - set(range(size)):
        raise InputError("rotation mentions vertices outside the graph")
    return PlanarEmbedding([rot.get(v, []) for v in range(size)], outer)


def read_rotation(path: str | Path, n: int | None = None) -> PlanarEmbedding:
    try:
        return parse_rotation(Path(path).read_text(), n)
    except OSError as exc:
        raise InputError(f"cannot read embedding file {path}: {exc.strerror}") from None


def read_order(path: str | Path) -> LinearOrder:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read order file {path}: {exc.strerror}") from None
    return LinearOrder.from_line(" ".join(ln.split("#", 1)[0] for ln in text.splitlines()))


def read_decomposition(path: str | Path) -> Decomposition:
    return Decomposition.from_lines(Path(path).read_text())
