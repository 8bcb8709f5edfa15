"""The bipartite graph of a pattern and its matchboxes.

Vertices are the rows ``1..m``, the ``A`` columns ``1-..p-`` and the ``B``
columns ``1+..q+``.  Unknown ``x_l`` becomes edge ``l``; it is a *left* edge
when it sits in ``A`` and a *right* edge when it sits in ``B``.  A matchbox
is a matching: a set of edges no two of which share a vertex.

The matching routines grow a seed matching by augmenting paths only.  An
augmenting path flips the edges along it, so every vertex that was matched
stays matched; :func:`optimal_pair` relies on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .pattern import Pattern

LEFT, RIGHT, MIXED = "left", "right", "mixed"
_KINDS = (LEFT, RIGHT, MIXED)


@dataclass(frozen=True)
class Edge:
    index: int  # 1-based, the unknown's index
    row: int
    side: str  # "A" (left edge) or "B" (right edge)
    col: int

    @property
    def column_vertex(self) -> tuple[str, int]:
        return self.side, self.col

    @property
    def is_left(self) -> bool:
        return self.side == "A"

    def label(self) -> str:
        return f"{self.row}-{self.col}{'-' if self.is_left else '+'}"


@dataclass(frozen=True)
class BipartiteGraph:
    m: int
    p: int
    q: int
    edges: tuple[Edge, ...]
    row_adjacency: tuple[tuple[int, ...], ...]  # row0 -> ascending edge indices

    @property
    def n(self) -> int:
        return len(self.edges)

    def edge(self, l: int) -> Edge:
        return self.edges[l - 1]

    def kind_of(self, l: int) -> str:
        return LEFT if self.edges[l - 1].is_left else RIGHT


def build_graph(pat: Pattern) -> BipartiteGraph:
    edges = tuple(Edge(l, pl.row, pl.side, pl.col)
                  for l, pl in enumerate(pat.placements, start=1))
    adj: list[list[int]] = [[] for _ in range(pat.m)]
    for e in edges:
        adj[e.row - 1].append(e.index)
    return BipartiteGraph(pat.m, pat.p, pat.q, edges, tuple(tuple(a) for a in adj))


@dataclass(frozen=True)
class Matchbox:
    edges: frozenset[int]
    kind: str

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown matchbox kind {self.kind!r}")

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def sorted_edges(self) -> list[int]:
        return sorted(self.edges)

    def rows(self, g: BipartiteGraph) -> frozenset[int]:
        return frozenset(g.edge(l).row for l in self.edges)

    def to_json(self) -> dict:
        return {"kind": self.kind, "edges": self.sorted_edges()}

    def describe(self, g: BipartiteGraph) -> str:
        return "{" + ", ".join(g.edge(l).label() for l in self.sorted_edges()) + "}"


def make_matchbox(g: BipartiteGraph, edges: Iterable[int], kind: str) -> Matchbox:
    """Validate ``edges`` as a matchbox of ``kind`` in ``g``."""
    edges = frozenset(edges)
    used: set = set()
    for l in sorted(edges):
        if not 1 <= l <= g.n:
            raise ValueError(f"edge {l} outside 1..{g.n}")
        e = g.edge(l)
        if kind == LEFT and not e.is_left:
            raise ValueError(f"edge {l} is a right edge in a left matchbox")
        if kind == RIGHT and e.is_left:
            raise ValueError(f"edge {l} is a left edge in a right matchbox")
        for v in (("row", e.row), e.column_vertex):
            if v in used:
                raise ValueError(f"edge {l} ({e.label()}) shares a vertex with another match")
            used.add(v)
    return Matchbox(edges, kind)


def _allowed(e: Edge, kind: str) -> bool:
    return kind == MIXED or (kind == LEFT) == e.is_left


def maximum_matchbox(g: BipartiteGraph, kind: str, seed: Matchbox | None = None) -> Matchbox:
    """Largest matchbox of ``kind``, grown from ``seed`` by augmenting paths.

    Free rows are tried in ascending order and edges in ascending index order,
    so the result is deterministic.  Every vertex matched in ``seed`` is still
    matched in the result.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown matchbox kind {kind!r}")
    seed_edges = seed.edges if seed is not None else frozenset()
    make_matchbox(g, seed_edges, kind)

    row_match: dict[int, int] = {}  # row -> edge
    col_match: dict[tuple[str, int], int] = {}  # column vertex -> edge
    for l in seed_edges:
        e = g.edge(l)
        row_match[e.row] = l
        col_match[e.column_vertex] = l

    adjacency = [[l for l in g.row_adjacency[i] if _allowed(g.edge(l), kind)]
                 for i in range(g.m)]

    def augment(row: int, visited: set) -> bool:
        for l in adjacency[row - 1]:
            cv = g.edge(l).column_vertex
            if cv in visited:
                continue
            visited.add(cv)
            owner = col_match.get(cv)
            if owner is None or augment(g.edge(owner).row, visited):
                row_match[row] = l
                col_match[cv] = l
                return True
        return False

    for row in range(1, g.m + 1):
        if row not in row_match and adjacency[row - 1]:
            augment(row, set())
    return Matchbox(frozenset(row_match.values()), kind)


@dataclass(frozen=True)
class GenericRanks:
    rA: int
    rB: int
    rM: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.rA, self.rB, self.rM


def generic_ranks(pat: Pattern | BipartiteGraph) -> GenericRanks:
    """Generic ranks of ``A(x)``, ``B(x)`` and ``M(x)`` as maximum matching sizes."""
    g = pat if isinstance(pat, BipartiteGraph) else build_graph(pat)
    return GenericRanks(*(maximum_matchbox(g, k).size for k in _KINDS))


def common_vertex_count(g: BipartiteGraph, A: Matchbox, B: Matchbox) -> int:
    """Rows touched by both a left and a right matchbox.

    A left and a right matchbox never share a column vertex, so rows are the
    only candidates.
    """
    _check_pair_kinds(g, A, B)
    return len(A.rows(g) & B.rows(g))


def merge(g: BipartiteGraph, A: Matchbox, B: Matchbox) -> Matchbox:
    """``A`` plus the matches of ``B`` whose row is not used by ``A``."""
    _check_pair_kinds(g, A, B)
    rows_a = A.rows(g)
    kept = {l for l in B.edges if g.edge(l).row not in rows_a}
    return Matchbox(A.edges | kept, MIXED)


def _check_pair_kinds(g: BipartiteGraph, A: Matchbox, B: Matchbox) -> None:
    if any(not g.edge(l).is_left for l in A.edges):
        raise ValueError("first matchbox must be a left matchbox")
    if any(g.edge(l).is_left for l in B.edges):
        raise ValueError("second matchbox must be a right matchbox")


def optimal_pair(pat: Pattern | BipartiteGraph) -> tuple[Matchbox, Matchbox]:
    """A largest left and a largest right matchbox with the fewest common rows.

    Grow a largest left matchbox into a largest mixed one; its left part is
    again a largest left matchbox ``A`` (its columns stay matched and only left
    edges reach them), and its right part ``C`` avoids the rows of ``A``.
    Growing ``C`` into a largest right matchbox ``B`` keeps those rows, so
    ``A`` and ``B`` share at most ``rA + rB - rM`` rows, which is the least
    possible because ``merge(A, B)`` is a matchbox.
    """
    g = pat if isinstance(pat, BipartiteGraph) else build_graph(pat)
    a0 = maximum_matchbox(g, LEFT)
    full = maximum_matchbox(g, MIXED, Matchbox(a0.edges, MIXED))
    A = Matchbox(frozenset(l for l in full.edges if g.edge(l).is_left), LEFT)
    C = Matchbox(frozenset(l for l in full.edges if not g.edge(l).is_left), RIGHT)
    B = maximum_matchbox(g, RIGHT, C)
    return A, B
