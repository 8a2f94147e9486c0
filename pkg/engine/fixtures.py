"""
Named fixture graphs and the triangle-replacement construction.

Labelings used throughout the tests:
- figure1: v1..v6 -> 0..5, edges v1v2, v1v3, v1v4, v2v5, v2v6
- prism: a1, a2, a3 -> 0, 1, 2 and b1, b2, b3 -> 3, 4, 5, rungs a_i b_i
- petersen: outer cycle 0..4, inner pentagram 5..9, spokes i ~ i+5
- k33: sides {0, 1, 2} and {3, 4, 5}
- coupling_gadget: u, v, u', v', x -> 0..4 with edges uv, u'v', xu, xu'
"""

from typing import Callable

from .errors import NotCubic
from .graph import Graph, is_cubic


def figure1() -> Graph:
    return Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])


def prism() -> Graph:
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def k4() -> Graph:
    return complete(4)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def k33() -> Graph:
    return Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def c4() -> Graph:
    return cycle(4)


def claw() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def single_edge() -> Graph:
    return Graph.from_edges(2, [(0, 1)])


def two_triangles() -> Graph:
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])


def coupling_gadget() -> Graph:
    return Graph.from_edges(5, [(0, 1), (2, 3), (4, 0), (4, 2)])


def truncate(g: Graph) -> Graph:
    """
    Replace every vertex of a cubic graph by a triangle.

    Vertex v becomes 3v, 3v+1, 3v+2; slot i of v carries the edge to the i-th
    smallest neighbor of v. The result is cubic and claw-free.
    """
    if not is_cubic(g):
        raise NotCubic("truncation needs a cubic graph")
    edges = []
    for v in range(g.n):
        a, b, c = 3 * v, 3 * v + 1, 3 * v + 2
        edges += [(a, b), (a, c), (b, c)]
    for e in g.edges():
        i = g.neighbors(e.u).index(e.v)
        j = g.neighbors(e.v).index(e.u)
        edges.append((3 * e.u + i, 3 * e.v + j))
    return Graph.from_edges(3 * g.n, edges)


def ring_of_diamonds(k: int) -> Graph:
    """k copies of K4 minus an edge, their degree-2 vertices joined in a cycle"""
    edges = []
    for i in range(k):
        a, b, c, d = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(a, b), (a, c), (b, c), (b, d), (c, d)]
        edges.append((d, 4 * ((i + 1) % k)))
    return Graph.from_edges(4 * k, edges)



def path_exchange() -> Graph:
    """
    Cubic claw-free graph on 22 vertices: six triangles and one diamond.

    With the matching in PATH_EXCHANGE_MATCHING and the transversal in
    PATH_EXCHANGE_START, vertex 0 is the only undominated unmatched vertex
    and no single endpoint swap helps; improving needs an alternating path.
    """
    triangles = [(0, 2, 3), (1, 4, 7), (6, 8, 9), (5, 10, 11), (12, 13, 14), (15, 16, 17)]
    edges = [(a, b) for t in triangles for a, b in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))]
    edges += [(18, 20), (18, 21), (19, 20), (19, 21), (20, 21)]
    edges += [(0, 1), (2, 5), (3, 6), (7, 8), (4, 12), (13, 15), (14, 16), (11, 17), (10, 18), (9, 19)]
    return Graph.from_edges(22, edges)


PATH_EXCHANGE_MATCHING = ((1, 4), (2, 5), (3, 6), (7, 8), (13, 15), (14, 16), (11, 17), (18, 20), (19, 21))
PATH_EXCHANGE_START = frozenset({4, 5, 6, 7, 15, 16, 17, 20, 21})


FIXTURES: dict[str, Callable[[], Graph]] = {
    "figure1": figure1,
    "prism": prism,
    "k4": k4,
    "petersen": petersen,
    "k33": k33,
    "c4": c4,
    "claw": claw,
    "single_edge": single_edge,
    "two_triangles": two_triangles,
    "truncated_k4": lambda: truncate(k4()),
    "diamond_ring_3": lambda: ring_of_diamonds(3),
}
