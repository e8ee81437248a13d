"""Oriented digraphs, vertex orderings, and feedback-arc counting.

An oriented digraph is a directed graph with no self-loops, no duplicate
arcs, and no 2-cycles: for any pair of vertices at most one of the arcs
u->v, v->u is present.  Vertices are the contiguous integers 0..n-1.

Given an ordering of the vertices, an arc is a *feedback arc* if it runs
from a later-ranked vertex to an earlier-ranked one.  Both graph and
ordering objects are immutable, so every operation here is a pure
function and safe to call concurrently.
"""
from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateArcError,
    GraphError,
    LengthMismatchError,
    SelfLoopError,
    TwoCycleError,
    VertexOutOfRangeError,
)

Arc = tuple[int, int]


class OrientedDigraph:
    """Immutable oriented digraph on vertices 0..n-1.

    Stores the arc list in construction order (so text round-trips are
    exact) plus per-vertex out/in adjacency for O(1) degree queries and
    O(M) traversals.
    """

    __slots__ = ("n", "arcs", "_arc_set", "_out", "_in")

    def __init__(self, n: int, arcs: Iterable[Arc]):
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        self.n = int(n)
        arc_list: list[Arc] = []
        arc_set: set[Arc] = set()
        out: list[list[int]] = [[] for _ in range(self.n)]
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for raw in arcs:
            u, v = int(raw[0]), int(raw[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRangeError(f"arc ({u}, {v}) outside 0..{self.n - 1}")
            if u == v:
                raise SelfLoopError(f"arc ({u}, {v}) is a self-loop")
            if (u, v) in arc_set:
                raise DuplicateArcError(f"arc ({u}, {v}) appears twice")
            if (v, u) in arc_set:
                raise TwoCycleError(f"arc ({u}, {v}) would form a 2-cycle with ({v}, {u})")
            arc_set.add((u, v))
            arc_list.append((u, v))
            out[u].append(v)
            inc[v].append(u)
        self.arcs: tuple[Arc, ...] = tuple(arc_list)
        self._arc_set = frozenset(arc_set)
        self._out = tuple(tuple(ws) for ws in out)
        self._in = tuple(tuple(ws) for ws in inc)

    @property
    def m(self) -> int:
        """Number of arcs."""
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def out_bitmasks(self) -> list[int]:
        """Per-vertex out-neighbor sets packed as integers (bit v = arc to v).

        Built on demand for subset-DP solver work; only sensible for small n.
        """
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return masks

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedDigraph):
            return NotImplemented
        return self.n == other.n and self._arc_set == other._arc_set

    def __hash__(self) -> int:
        return hash((self.n, self._arc_set))

    def __repr__(self) -> str:
        return f"OrientedDigraph(n={self.n}, m={self.m})"


class VertexOrdering:
    """A permutation of the vertices: positions[i] is the vertex at rank i."""

    __slots__ = ("positions", "ranks")

    def __init__(self, positions: Sequence[int]):
        pos = tuple(int(v) for v in positions)
        n = len(pos)
        ranks = [-1] * n
        for i, v in enumerate(pos):
            if not 0 <= v < n or ranks[v] != -1:
                raise GraphError(f"positions {pos!r} is not a permutation of 0..{n - 1}")
            ranks[v] = i
        self.positions = pos
        self.ranks = tuple(ranks)

    @classmethod
    def identity(cls, n: int) -> "VertexOrdering":
        return cls(range(n))

    @property
    def n(self) -> int:
        return len(self.positions)

    def rank_of(self, v: int) -> int:
        return self.ranks[v]

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(self.positions[::-1])

    def inverse(self) -> "VertexOrdering":
        """Ordering whose rank function undoes this one's."""
        return VertexOrdering(self.ranks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)

    def __len__(self) -> int:
        return len(self.positions)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexOrdering):
            return NotImplemented
        return self.positions == other.positions

    def __hash__(self) -> int:
        return hash(self.positions)

    def __repr__(self) -> str:
        return f"VertexOrdering({list(self.positions)!r})"


@dataclass(frozen=True)
class FasResult:
    """A vertex ordering together with its feedback/forward arc split.

    feedback_count + forward_count always equals the graph's arc count.
    When ``exact`` is true the feedback count is the true minimum over
    all orderings.
    """

    ordering: VertexOrdering
    feedback_count: int
    forward_count: int
    exact: bool
    method: str


def count_feedback_arcs(g: OrientedDigraph, ordering: VertexOrdering) -> int:
    """Number of arcs running from a later-ranked to an earlier-ranked vertex."""
    if ordering.n != g.n:
        raise LengthMismatchError(f"ordering has {ordering.n} vertices, graph has {g.n}")
    ranks = ordering.ranks
    return sum(1 for u, v in g.arcs if ranks[u] > ranks[v])


def is_acyclic(g: OrientedDigraph) -> bool:
    """True iff some ordering has zero feedback arcs (Kahn peeling)."""
    indeg = [g.in_degree(v) for v in range(g.n)]
    queue = deque(v for v in range(g.n) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in g.out_neighbors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == g.n


def relabel(g: OrientedDigraph, ordering: VertexOrdering) -> OrientedDigraph:
    """Rename the vertex at rank i to i.

    The result is isomorphic to ``g`` and has, under the identity
    ordering, exactly the feedback arcs ``g`` has under ``ordering``.
    """
    if ordering.n != g.n:
        raise LengthMismatchError(f"ordering has {ordering.n} vertices, graph has {g.n}")
    ranks = ordering.ranks
    return OrientedDigraph(g.n, ((ranks[u], ranks[v]) for u, v in g.arcs))


def average_degree(g: OrientedDigraph) -> float:
    """2M/n: mean of in-degree plus out-degree over the vertices."""
    if g.n < 1:
        raise GraphError("average degree needs at least one vertex")
    return 2.0 * g.m / g.n


def format_edgelist(g: OrientedDigraph) -> str:
    """Render as text: a header line "n M" then one "u v" line per arc."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.arcs)
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> OrientedDigraph:
    """Parse the edge-list text format; '#' lines and blank lines are ignored."""
    header: tuple[int, int] | None = None
    arcs: list[Arc] = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            header = (a, b)
        else:
            arcs.append((a, b))
    if header is None:
        raise GraphError("missing 'n M' header line")
    n, m = header
    if len(arcs) != m:
        raise GraphError(f"header declares {m} arcs but {len(arcs)} were found")
    return OrientedDigraph(n, arcs)


def write_edgelist(g: OrientedDigraph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_edgelist(g))


def read_edgelist(path) -> OrientedDigraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_edgelist(fh.read())
