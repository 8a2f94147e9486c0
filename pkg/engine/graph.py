"""
Graph core

Immutable simple undirected graph stored as one adjacency bit vector per
vertex, plus the structural predicates every other module relies on:
regularity, connectivity, claw-freeness and line graphs.
"""

import logging
from collections import deque
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

import networkx as nx

from .errors import EmptyEdgeSet
from .utils import iter_bits, lowest_bit, mask_of, members, popcount

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    """Edge in canonical order (u < v)"""
    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "Edge":
        if a == b:
            raise ValueError(f"loop at vertex {a}")
        return cls(a, b) if a < b else cls(b, a)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"{x} is not an endpoint of {self}")

    @property
    def mask(self) -> int:
        return (1 << self.u) | (1 << self.v)


class Graph:
    """Immutable simple graph on vertices 0..n-1"""

    __slots__ = ("_n", "_rows", "_edge_count", "_edges")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0 or len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        rows = tuple(rows)
        full = (1 << n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for w in iter_bits(row):
                if not rows[w] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric for {v},{w}")
        self._n = n
        self._rows = rows
        self._edge_count = sum(popcount(r) for r in rows) // 2
        self._edges: Optional[tuple[Edge, ...]] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    # ========== Basic queries ==========

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def neighbor_mask(self, v: int) -> int:
        return self._rows[v]

    def closed_mask(self, v: int) -> int:
        return self._rows[v] | (1 << v)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self._rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self._rows]

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self._rows[a] >> b & 1)

    def edges(self) -> tuple[Edge, ...]:
        """All edges, lexicographic on (u, v)"""
        if self._edges is None:
            self._edges = tuple(
                Edge(u, v)
                for u in range(self._n)
                for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))
            )
        return self._edges

    def closed_neighborhood_union(self, mask: int) -> int:
        covered = mask
        for v in iter_bits(mask):
            covered |= self._rows[v]
        return covered

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Relabeled induced subgraph; second item maps new labels to old ones"""
        old = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(old)}
        rows = [mask_of(index[w] for w in iter_bits(self._rows[v]) if w in index) for v in old]
        return Graph(len(old), rows), old

    # ========== Interop ==========

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self._n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in g.edges()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self._edge_count})"


# ========== Predicates ==========

def is_regular(g: Graph) -> Optional[int]:
    """Common degree if all degrees are equal, else None"""
    degrees = set(g.degrees())
    if len(degrees) == 1:
        return degrees.pop()
    return None


def is_cubic(g: Graph) -> bool:
    return g.n > 0 and is_regular(g) == 3


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of the components, ordered by smallest vertex"""
    remaining = g.full_mask
    components = []
    while remaining:
        start = lowest_bit(remaining)
        seen = 1 << start
        queue = deque([start])
        while queue:
            v = queue.popleft()
            fresh = g.neighbor_mask(v) & ~seen
            seen |= fresh
            queue.extend(iter_bits(fresh))
        remaining &= ~seen
        components.append(members(seen))
    return components


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def find_claw(g: Graph) -> Optional[tuple[int, tuple[int, int, int]]]:
    """Center and leaves of some induced K_{1,3}, or None"""
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if len(nbrs) < 3:
            continue
        nbr_mask = g.neighbor_mask(v)
        for a, b in combinations(nbrs, 2):
            if g.has_edge(a, b):
                continue
            rest = nbr_mask & ~g.closed_mask(a) & ~g.closed_mask(b)
            if rest:
                c = lowest_bit(rest)
                return v, tuple(sorted((a, b, c)))
    return None


def is_claw_free(g: Graph) -> bool:
    return find_claw(g) is None


class LineGraph(NamedTuple):
    graph: Graph
    edges: tuple[Edge, ...]  # vertex i of graph is edges[i]


def line_graph(g: Graph) -> LineGraph:
    """L(g) with vertices labeled by g's edges in canonical order"""
    edges = g.edges()
    if not edges:
        raise EmptyEdgeSet("line graph of an edgeless graph")
    incident = [0] * g.n
    for i, e in enumerate(edges):
        incident[e.u] |= 1 << i
        incident[e.v] |= 1 << i
    rows = [(incident[e.u] | incident[e.v]) & ~(1 << i) for i, e in enumerate(edges)]
    logger.debug(f"line graph: {g.edge_count} vertices")
    return LineGraph(Graph(len(edges), rows), edges)
