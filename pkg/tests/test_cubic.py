import math
from fractions import Fraction

import pytest

from engine import fixtures
from engine.cubic import (
    ShortcutDominatingSet,
    Theorem2Scheme,
    TripleCase,
    build_theorem2_scheme,
    classify_residue,
    derandomize_triples,
    find_coupled_pairs,
    order10_shortcut,
    theorem2_certificate,
    theorem2_dominating_set,
)
from engine.errors import NotConnected, NotCubic
from engine.graph import Graph, is_connected
from engine.schemes import CoupledPair, FixedTriple, SelectionScheme, uncovered_probability
from engine.solvers import Matching, domination_number, greedy_maximal_matching, is_dominating

from .oracles import brute_uncovered_probability


@pytest.fixture
def gadget():
    g = fixtures.coupling_gadget()
    return g, Matching.from_edges(g, [(0, 1), (2, 3)])


def two_k4() -> Graph:
    k4_edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    return Graph.from_edges(8, k4_edges + [(a + 4, b + 4) for a, b in k4_edges])


class TestCoupling:
    def test_gadget_pair(self, gadget):
        g, m = gadget
        pairs = find_coupled_pairs(g, m, relaxed_degree=True)
        assert len(pairs) == 1
        pair = pairs[0]
        assert (pair.first, pair.second) == ((0, 1), (2, 3))
        assert pair.x == frozenset({4}) and pair.y == frozenset()
        assert pair.outcomes == (frozenset({0, 3}), frozenset({1, 2}))

    def test_gadget_needs_relaxation(self, gadget):
        with pytest.raises(NotCubic):
            find_coupled_pairs(*gadget)

    def test_gadget_classification_and_certificate(self, gadget):
        g, m = gadget
        pairs = find_coupled_pairs(g, m, relaxed_degree=True)
        c = classify_residue(g, m, pairs)
        assert c.r_set == frozenset({4})
        assert c.r2_set == frozenset({4})
        assert c.s_paired == frozenset({0, 1, 2, 3})
        assert c.current == frozenset()
        scheme = SelectionScheme.from_groups(m, [p.as_group() for p in pairs])
        certificate = theorem2_certificate(g, m, scheme, c, (), pairs)
        assert certificate.holds
        assert certificate.expected_uncovered == 0
        assert certificate.check("pair_x_zero[4]").holds

    def test_prism_residue_is_all_r0(self, prism, prism_matching):
        assert find_coupled_pairs(prism, prism_matching) == []
        c = classify_residue(prism, prism_matching, [])
        assert c.r0_set == frozenset({2, 3})
        assert c.r == 0 and c.r_superscript_1 == 0

    def test_perfect_matching_has_no_pairs(self, k33):
        assert find_coupled_pairs(k33, greedy_maximal_matching(k33)) == []

    def test_pairs_are_disjoint_and_improving(self, random_cubic_sample):
        for g in random_cubic_sample:
            m = greedy_maximal_matching(g)
            pairs = find_coupled_pairs(g, m)
            edges = [e for p in pairs for e in (p.first, p.second)]
            assert len(edges) == len(set(edges))
            assert all(len(p.x) > len(p.y) for p in pairs)
            c = classify_residue(g, m, pairs)
            assert 2 * c.r2 + c.r1 <= 8 * c.p
            assert c.r3 <= 12 * c.r0 + 6 * c.r2
            assert c.r - 13 * c.r0 - 28 * c.p <= c.r_superscript_1


class TestTriples:
    def test_petersen_classification(self, petersen, petersen_matching):
        assert find_coupled_pairs(petersen, petersen_matching) == []
        c = classify_residue(petersen, petersen_matching, [])
        assert c.r_set == frozenset({2, 4, 5, 6})
        assert c.r0 == 0 and c.p == 0
        assert c.current == c.r_set

    def test_petersen_single_triple(self, petersen, petersen_matching):
        c = classify_residue(petersen, petersen_matching, [])
        triples, traces = derandomize_triples(petersen, petersen_matching, [], c)
        assert len(triples) == 1
        trace = traces[0]
        assert trace.center == 2
        assert trace.endpoints == frozenset({1, 3, 7})
        assert trace.s_tau == frozenset()
        assert trace.removed_from_r == frozenset({2, 4, 5, 6})
        assert trace.case_tag is TripleCase.ORDER10_SHORTCUT
        assert trace.reduction_credit == Fraction(1, 2)

    def test_order10_shortcut(self, petersen, petersen_matching, prism, prism_matching):
        assert order10_shortcut(petersen, petersen_matching, 2) == frozenset({1, 3, 7})
        assert order10_shortcut(petersen, petersen_matching, 0) is None
        assert order10_shortcut(prism, prism_matching, 2) is None

    def test_build_with_shortcut(self, petersen, petersen_matching):
        outcome = build_theorem2_scheme(petersen, petersen_matching)
        assert isinstance(outcome, ShortcutDominatingSet)
        assert outcome.vertices == frozenset({1, 3, 7})

    def test_build_without_shortcut(self, petersen, petersen_matching):
        outcome = build_theorem2_scheme(petersen, petersen_matching, shortcut=False)
        assert isinstance(outcome, Theorem2Scheme)
        assert outcome.classification.t == 1
        certificate = theorem2_certificate(
            petersen, petersen_matching, outcome.scheme, outcome.classification, outcome.traces, outcome.pairs
        )
        assert certificate.holds
        assert certificate.expected_uncovered == 0
        assert certificate.check("t_lower").lhs == 1

    def test_preconditions(self, figure1):
        with pytest.raises(NotCubic):
            build_theorem2_scheme(figure1, greedy_maximal_matching(figure1))
        g = two_k4()
        with pytest.raises(NotConnected):
            build_theorem2_scheme(g, greedy_maximal_matching(g))


class TestDominatingSet:
    def test_petersen(self, petersen, petersen_matching):
        result = theorem2_dominating_set(petersen, petersen_matching)
        assert result.dominating_set == frozenset({1, 3, 7})
        component = result.components[0]
        assert component.shortcut
        assert component.certificate.holds
        assert component.certificate.check("t_lower").rhs == 1
        assert component.expected_uncovered == 0

    def test_petersen_without_shortcut(self, petersen, petersen_matching):
        result = theorem2_dominating_set(petersen, petersen_matching, shortcut=False)
        component = result.components[0]
        assert not component.shortcut
        assert component.certificate.holds
        assert is_dominating(petersen, result.dominating_set)
        assert result.size == 3

    def test_prism(self, prism, prism_matching):
        result = theorem2_dominating_set(prism, prism_matching)
        assert result.size == 2
        assert is_dominating(prism, result.dominating_set)

    def test_disconnected(self):
        g = two_k4()
        result = theorem2_dominating_set(g, greedy_maximal_matching(g))
        assert len(result.components) == 2
        assert result.size == 4

    def test_random_cubic(self, random_cubic_sample):
        for g in random_cubic_sample:
            m = greedy_maximal_matching(g)
            result = theorem2_dominating_set(g, m)
            assert is_dominating(g, result.dominating_set)
            assert all(c.certificate.holds for c in result.components)
            assert result.size <= math.floor(Fraction(79, 68) * len(m))
            assert result.size >= domination_number(g).value


class TestExactProbabilities:
    def assert_matches_enumeration(self, g, m, scheme):
        for u in range(g.n):
            if m.partner(u) is None:
                exact = uncovered_probability(g, m, scheme, u).to_fraction()
                assert exact == brute_uncovered_probability(g, scheme, u)

    def test_coupled_pair(self, gadget):
        g, m = gadget
        pairs = find_coupled_pairs(g, m, relaxed_degree=True)
        scheme = SelectionScheme.from_groups(m, [p.as_group() for p in pairs])
        assert any(isinstance(grp, CoupledPair) for grp in scheme.groups)
        self.assert_matches_enumeration(g, m, scheme)

    def test_fixed_triple(self, petersen, petersen_matching):
        outcome = build_theorem2_scheme(petersen, petersen_matching, shortcut=False)
        assert any(isinstance(grp, FixedTriple) for grp in outcome.scheme.groups)
        self.assert_matches_enumeration(petersen, petersen_matching, outcome.scheme)

    def test_refined_schemes(self, random_cubic_sample):
        for g in random_cubic_sample[:60]:
            if not is_connected(g):
                continue
            m = greedy_maximal_matching(g)
            outcome = build_theorem2_scheme(g, m, shortcut=False)
            self.assert_matches_enumeration(g, m, outcome.scheme)
