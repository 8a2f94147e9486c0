import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engine import fixtures
from engine.errors import EmptyEdgeSet, NotCubic
from engine.graph import (
    Edge,
    Graph,
    connected_components,
    find_claw,
    is_claw_free,
    is_connected,
    is_cubic,
    is_regular,
    line_graph,
)
from engine.utils import popcount


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


class TestGraph:
    def test_edges_are_canonical(self, prism):
        edges = prism.edges()
        assert list(edges) == sorted(edges)
        assert all(e.u < e.v for e in edges)
        assert len(edges) == prism.edge_count == 9

    def test_rejects_asymmetric_rows(self):
        with pytest.raises(ValueError):
            Graph(2, [0b10, 0])

    def test_rejects_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(1, 1)])

    def test_neighbors_sorted(self, petersen):
        assert petersen.neighbors(0) == (1, 4, 5)
        assert petersen.degree(7) == 3

    def test_edge_helpers(self):
        e = Edge.of(5, 2)
        assert e == (2, 5)
        assert e.other(2) == 5
        assert e.mask == 0b100100
        with pytest.raises(ValueError):
            e.other(3)

    def test_induced_subgraph_relabels(self, prism):
        sub, labels = prism.induced_subgraph({0, 1, 2, 3})
        assert labels == (0, 1, 2, 3)
        assert sub.edge_count == 4
        assert sub.has_edge(0, 3)

    def test_networkx_round_trip(self, petersen):
        assert Graph.from_networkx(petersen.to_networkx()) == petersen
        assert nx.is_isomorphic(petersen.to_networkx(), nx.petersen_graph())


class TestPredicates:
    def test_regularity(self, figure1, prism):
        assert is_regular(prism) == 3
        assert is_regular(figure1) is None
        assert is_cubic(fixtures.k4())
        assert not is_cubic(fixtures.c4())

    def test_connectivity(self, prism):
        assert is_connected(prism)
        two = fixtures.two_triangles()
        assert not is_connected(two)
        assert connected_components(two) == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
        assert not is_connected(Graph.empty(0))

    def test_claw_detection(self, prism, petersen, k33):
        assert find_claw(fixtures.claw()) == (0, (1, 2, 3))
        assert is_claw_free(prism)
        assert is_claw_free(fixtures.k4())
        assert not is_claw_free(petersen)
        assert not is_claw_free(k33)

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_components_match_networkx(self, g):
        ours = sorted(sorted(c) for c in connected_components(g))
        theirs = sorted(sorted(c) for c in nx.connected_components(g.to_networkx()))
        assert ours == theirs


class TestLineGraph:
    def test_triangle_is_self_line_graph(self):
        lg = line_graph(fixtures.cycle(3))
        assert lg.graph.n == 3 and lg.graph.edge_count == 3

    def test_claw_gives_triangle(self):
        lg = line_graph(fixtures.claw())
        assert lg.edges == ((0, 1), (0, 2), (0, 3))
        assert lg.graph.edge_count == 3

    def test_edgeless_rejected(self):
        with pytest.raises(EmptyEdgeSet):
            line_graph(Graph.empty(3))

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_line_graphs_are_claw_free(self, g):
        if g.edge_count == 0:
            return
        lg = line_graph(g)
        assert is_claw_free(lg.graph)
        assert nx.is_isomorphic(lg.graph.to_networkx(), nx.line_graph(g.to_networkx()))


class TestFixtures:
    def test_truncation_is_cubic_claw_free(self, truncated_k4):
        assert truncated_k4.n == 12
        assert is_cubic(truncated_k4)
        assert is_claw_free(truncated_k4)
        assert is_connected(truncated_k4)

    def test_truncation_needs_cubic(self):
        with pytest.raises(NotCubic):
            fixtures.truncate(fixtures.c4())

    def test_diamond_ring(self):
        g = fixtures.ring_of_diamonds(3)
        assert is_cubic(g) and is_claw_free(g) and is_connected(g)

    @pytest.mark.parametrize("name", sorted(fixtures.FIXTURES))
    def test_every_fixture_builds(self, name):
        assert fixtures.FIXTURES[name]().n > 0

    def test_path_exchange(self):
        g = fixtures.path_exchange()
        assert g.n == 22
        assert is_cubic(g) and is_claw_free(g) and is_connected(g)


class TestBits:
    def test_popcount(self):
        assert popcount(0) == 0
        assert popcount(0b1011) == 3
        assert popcount(1 << 200 | 1) == 2
        assert popcount(fixtures.petersen().neighbor_mask(0)) == 3
