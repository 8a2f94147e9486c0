import math
from fractions import Fraction

import pytest

from engine import fixtures
from engine.dyadic import DyadicRational
from engine.errors import NotMaximal, VertexMatched
from engine.graph import Edge
from engine.schemes import (
    CoupledPair,
    Fixed,
    SelectionScheme,
    Singleton,
    derandomize_conditional,
    expectation_report,
    iter_conditional_fixings,
    monte_carlo,
    sample,
    theorem1_bound,
    uncovered_probability,
    uncovered_set,
    uniform_scheme,
)
from engine.solvers import Matching, greedy_maximal_matching, is_dominating

from .oracles import brute_uncovered_probability


@pytest.fixture
def gadget():
    g = fixtures.coupling_gadget()
    return g, Matching.from_edges(g, [(0, 1), (2, 3)])


class TestScheme:
    def test_uniform_petersen(self, petersen, petersen_matching):
        scheme = uniform_scheme(petersen_matching)
        assert scheme.is_uniform
        for u in (2, 4, 5, 6):
            assert uncovered_probability(petersen, petersen_matching, scheme, u) == Fraction(1, 8)
        report = expectation_report(petersen, petersen_matching, scheme)
        assert report.total == Fraction(1, 2)
        assert report.bound_rhs == report.total

    def test_matched_vertex_rejected(self, petersen, petersen_matching):
        with pytest.raises(VertexMatched):
            uncovered_probability(petersen, petersen_matching, uniform_scheme(petersen_matching), 0)

    def test_non_maximal_rejected(self, prism):
        with pytest.raises(NotMaximal):
            uniform_scheme(Matching.from_edges(prism, [(0, 1)]))

    def test_both_endpoints_adjacent_is_never_uncovered(self, prism, prism_matching):
        report = expectation_report(prism, prism_matching, uniform_scheme(prism_matching))
        assert report.per_vertex == {2: 0, 3: 0}

    def test_groups_must_partition(self, gadget):
        g, m = gadget
        with pytest.raises(ValueError):
            SelectionScheme(m, (Singleton(Edge(0, 1)),))
        filled = SelectionScheme.from_groups(m, [Singleton(Edge(2, 3))])
        assert filled.groups == (Singleton(Edge(0, 1)), Singleton(Edge(2, 3)))

    def test_coupled_outcomes_validated(self):
        with pytest.raises(ValueError):
            CoupledPair(Edge(0, 1), Edge(2, 3), frozenset({0, 3}), frozenset({0, 2}))
        with pytest.raises(ValueError):
            Fixed((Edge(0, 1),), frozenset({0, 1}))

    def test_coupling_covers_shared_neighbor(self, gadget):
        g, m = gadget
        uniform = uniform_scheme(m)
        assert uncovered_probability(g, m, uniform, 4) == Fraction(1, 4)
        pair = CoupledPair(Edge(0, 1), Edge(2, 3), frozenset({0, 3}), frozenset({1, 2}))
        coupled = SelectionScheme(m, (pair,))
        assert not coupled.is_uniform
        assert uncovered_probability(g, m, coupled, 4) == 0

    def test_matches_enumeration(self, random_cubic_sample):
        for g in random_cubic_sample[:40]:
            m = greedy_maximal_matching(g)
            scheme = uniform_scheme(m)
            for u in (u for u in range(g.n) if m.partner(u) is None):
                exact = uncovered_probability(g, m, scheme, u)
                assert exact.to_fraction() == brute_uncovered_probability(g, scheme, u)

    def test_theorem1_bound(self):
        assert theorem1_bound(3) == Fraction(7, 6)
        assert theorem1_bound(1) == 1
        with pytest.raises(ValueError):
            theorem1_bound(0)


class TestSampling:
    def test_sample_is_transversal(self, petersen_matching):
        scheme = uniform_scheme(petersen_matching)
        d = sample(scheme, 7)
        assert d == sample(scheme, 7)
        assert petersen_matching.is_transversal(d)

    def test_uncovered_set(self, petersen, petersen_matching):
        assert uncovered_set(petersen, petersen_matching, {0, 3, 7}) == frozenset({6})

    def test_monte_carlo_agrees(self, petersen, petersen_matching):
        scheme = uniform_scheme(petersen_matching)
        result = monte_carlo(petersen, petersen_matching, scheme, trials=4000, seed=0)
        assert result.trials == 4000
        assert result.agrees_with(Fraction(1, 2))
        assert result.best_size >= 3
        assert is_dominating(petersen, result.best_set)

    def test_monte_carlo_deterministic_scheme(self, prism, prism_matching):
        result = monte_carlo(prism, prism_matching, uniform_scheme(prism_matching), trials=50, seed=1)
        assert result.mean == 0.0
        assert result.agrees_with(0)


class TestDerandomization:
    def test_petersen_reaches_zero(self, petersen, petersen_matching):
        d = derandomize_conditional(petersen, petersen_matching, uniform_scheme(petersen_matching))
        assert petersen_matching.is_transversal(d)
        assert uncovered_set(petersen, petersen_matching, d) == frozenset()
        assert is_dominating(petersen, d)

    def test_fixings_never_increase(self, random_cubic_sample):
        for g in random_cubic_sample[:25]:
            m = greedy_maximal_matching(g)
            start = expectation_report(g, m, uniform_scheme(m)).total
            steps = [step for step, _ in iter_conditional_fixings(g, m, uniform_scheme(m))]
            assert len(steps) == len(m)
            assert steps[0].before == start
            assert all(s.after <= s.before for s in steps)
            d = derandomize_conditional(g, m, uniform_scheme(m))
            assert len(uncovered_set(g, m, d)) <= math.floor(start)
            assert isinstance(steps[-1].after, DyadicRational)
