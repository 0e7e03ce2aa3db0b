"""Simple undirected graphs: edge-list I/O, stability number, named graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

__all__ = ["Graph", "GraphFormatError", "parse_edge_list", "stability_number", "cycle", "complete", "petersen"]


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Vertices are 0..v-1; edges are stored as sorted pairs."""

    v: int
    edges: FrozenSet[Tuple[int, int]]

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if v < 1:
            raise GraphFormatError("a graph needs at least one vertex")
        seen = set()
        for i, j in edges:
            if i == j:
                raise GraphFormatError(f"self-loop at vertex {i + 1}")
            if not (0 <= i < v and 0 <= j < v):
                raise GraphFormatError(f"edge ({i + 1}, {j + 1}) outside 1..{v}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise GraphFormatError(f"duplicate edge ({e[0] + 1}, {e[1] + 1})")
            seen.add(e)
        return cls(v, frozenset(seen))

    def neighbours(self) -> List[int]:
        """Adjacency as bitmasks, one int per vertex."""
        adj = [0] * self.v
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def to_edge_list(self) -> str:
        lines = [f"p {self.v} {len(self.edges)}"]
        lines += [f"{i + 1} {j + 1}" for i, j in sorted(self.edges)]
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Read ``u v`` lines (1-indexed) with an optional ``p <vertices> <edges>``
    header.  Blank lines and ``#`` comments are skipped.  DIMACS-style
    ``p edge V E`` headers and ``e u v`` lines are accepted as well.
    """
    declared_v = declared_e = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c "):
            continue
        tok = line.split()
        if tok[0] == "p":
            nums = [t for t in tok[1:] if t.isdigit()]
            if len(nums) != 2 or declared_v is not None or edges:
                raise GraphFormatError(f"line {lineno}: malformed or misplaced header {raw!r}")
            declared_v, declared_e = int(nums[0]), int(nums[1])
            continue
        if tok[0] == "e":
            tok = tok[1:]
        if len(tok) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, w = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected integers, got {raw!r}") from None
        if u < 1 or w < 1:
            raise GraphFormatError(f"line {lineno}: vertices are 1-indexed")
        edges.append((u - 1, w - 1))
    v = declared_v if declared_v is not None else max((max(e) + 1 for e in edges), default=0)
    g = Graph.from_edges(v, edges)
    if declared_e is not None and declared_e != len(g.edges):
        raise GraphFormatError(f"header declares {declared_e} edges, found {len(g.edges)}")
    return g


def stability_number(g: Graph) -> int:
    """Exact alpha(G) by exhaustive branching on the lowest remaining vertex.

    Exponential; intended for v up to about 25.
    """
    adj = g.neighbours()

    def best(mask: int) -> int:
        if not mask:
            return 0
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask & ~low
        if not adj[i] & rest:
            return 1 + best(rest)
        return max(best(rest), 1 + best(rest & ~adj[i]))

    return best((1 << g.v) - 1)


def cycle(v: int) -> Graph:
    return Graph.from_edges(v, [(i, (i + 1) % v) for i in range(v)])


def complete(v: int) -> Graph:
    return Graph.from_edges(v, [(i, j) for i in range(v) for j in range(i + 1, v)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
