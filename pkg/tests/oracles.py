"""Brute-force reference implementations for small graphs"""

from fractions import Fraction
from itertools import combinations, product

from engine.graph import Graph


def dominates(g: Graph, vertices) -> bool:
    covered = set(vertices)
    for v in vertices:
        covered.update(g.neighbors(v))
    return len(covered) == g.n


def naive_gamma(g: Graph) -> int:
    for k in range(g.n + 1):
        if any(dominates(g, s) for s in combinations(range(g.n), k)):
            return k
    raise AssertionError("unreachable")


def naive_lex_gamma_witness(g: Graph) -> frozenset:
    """Lexicographically smallest minimum dominating set (combinations come out in lex order)"""
    k = naive_gamma(g)
    return frozenset(next(s for s in combinations(range(g.n), k) if dominates(g, s)))


def naive_independent_domination(g: Graph) -> int:
    for k in range(g.n + 1):
        for s in combinations(range(g.n), k):
            if all(not g.has_edge(a, b) for a, b in combinations(s, 2)) and dominates(g, s):
                return k
    raise AssertionError("unreachable")


def is_matching(edges) -> bool:
    seen = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def is_maximal(g: Graph, edges) -> bool:
    covered = {x for e in edges for x in e}
    return all(e.u in covered or e.v in covered for e in g.edges())


def naive_gamma_e(g: Graph) -> int:
    edges = g.edges()
    for k in range(len(edges) + 1):
        for s in combinations(edges, k):
            if is_matching(s) and is_maximal(g, s):
                return k
    raise AssertionError("unreachable")


def brute_uncovered_probability(g: Graph, scheme, u: int) -> Fraction:
    """Enumerate every joint outcome of every group"""
    groups = scheme.groups
    total = Fraction(0)
    for picks in product(*(grp.outcomes() for grp in groups)):
        prob = Fraction(1)
        chosen = set()
        for p, outcome in picks:
            prob *= p.to_fraction()
            chosen |= outcome
        if not set(g.neighbors(u)) & chosen:
            total += prob
    return total
