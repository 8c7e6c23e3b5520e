"""Linear orders of a vertex set."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InputError


class LinearOrder:
    """A bijection between vertices ``0..n-1`` and positions ``0..n-1``.

    ``u <_L v`` iff ``position[u] < position[v]``.  Built from the vertex sequence, smallest
    position first.
    """

    __slots__ = ("sequence", "position")

    def __init__(self, sequence: Iterable[int]):
        seq = tuple(sequence)
        n = len(seq)
        pos = [-1] * n
        for i, v in enumerate(seq):
            if not (isinstance(v, int) and 0 <= v < n) or pos[v] != -1:
                raise InputError(f"not a permutation of 0..{n - 1}: {list(seq)[:20]}")
            pos[v] = i
        self.sequence = seq
        self.position: tuple[int, ...] = tuple(pos)

    @classmethod
    def identity(cls, n: int) -> "LinearOrder":
        return cls(range(n))

    @classmethod
    def from_positions(cls, position: Sequence[int]) -> "LinearOrder":
        seq = [0] * len(position)
        for v, p in enumerate(position):
            seq[p] = v
        return cls(seq)

    def __len__(self) -> int:
        return len(self.sequence)

    def less(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]

    def reversed(self) -> "LinearOrder":
        return LinearOrder(self.sequence[::-1])

    def restrict(self, vertices: Iterable[int]) -> list[int]:
        """Vertices of the given set in order."""
        return sorted(vertices, key=self.position.__getitem__)

    def to_line(self) -> str:
        return " ".join(map(str, self.sequence))

    @classmethod
    def from_line(cls, line: str) -> "LinearOrder":
        try:
            return cls(int(tok) for tok in line.split())
        except ValueError as exc:
            raise InputError(f"bad order line: {line!r}") from exc

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearOrder) and self.sequence == other.sequence

    def __hash__(self) -> int:
        return hash(self.sequence)

    def __repr__(self) -> str:
        return f"LinearOrder({list(self.sequence)})"
