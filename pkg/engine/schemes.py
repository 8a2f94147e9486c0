"""
Selection schemes for random transversals

A scheme picks one endpoint of every matching edge. It factors into
independent groups:
- Singleton: one edge, each endpoint with probability 1/2
- CoupledPair: two edges, one of two declared joint outcomes, each 1/2
- Fixed / FixedTriple: deterministic choice

D is the chosen set and B the unmatched vertices with no neighbor in D, so
D u B always dominates when the matching is maximal. This module computes
P[u in B] and E[|B|] exactly, samples D, and derandomizes by conditional
expectations.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

import numpy as np

from .dyadic import HALF, ONE, ZERO, DyadicRational
from .errors import CertificateViolation, NotMaximal, VertexMatched
from .graph import Edge, Graph
from .solvers import Matching, is_dominating, is_maximal_matching
from .utils import iter_bits, mask_of, members, popcount

logger = logging.getLogger(__name__)

Outcome = tuple[DyadicRational, frozenset]


# ========== Groups ==========

@dataclass(frozen=True)
class Singleton:
    edge: Edge

    @property
    def edges(self) -> tuple[Edge, ...]:
        return (self.edge,)

    def outcomes(self) -> tuple[Outcome, ...]:
        return (HALF, frozenset({self.edge.u})), (HALF, frozenset({self.edge.v}))


@dataclass(frozen=True)
class CoupledPair:
    """D takes outcome_a or outcome_b, each with probability 1/2"""

    first: Edge
    second: Edge
    outcome_a: frozenset
    outcome_b: frozenset

    def __post_init__(self):
        for outcome in (self.outcome_a, self.outcome_b):
            if len(outcome & set(self.first)) != 1 or len(outcome & set(self.second)) != 1 or len(outcome) != 2:
                raise ValueError(f"outcome {sorted(outcome)} must hold one endpoint of each coupled edge")
        if self.outcome_a & self.outcome_b:
            raise ValueError("coupled outcomes must be disjoint")

    @property
    def edges(self) -> tuple[Edge, ...]:
        return (self.first, self.second)

    def outcomes(self) -> tuple[Outcome, ...]:
        return (HALF, self.outcome_a), (HALF, self.outcome_b)


@dataclass(frozen=True)
class Fixed:
    """Deterministic choice for a set of edges"""

    edges: tuple[Edge, ...]
    chosen: frozenset

    def __post_init__(self):
        if len(self.chosen) != len(self.edges):
            raise ValueError("fixed choice needs one vertex per edge")
        for e in self.edges:
            if len(self.chosen & set(e)) != 1:
                raise ValueError(f"fixed choice must hold exactly one endpoint of {e}")

    def outcomes(self) -> tuple[Outcome, ...]:
        return ((ONE, self.chosen),)


@dataclass(frozen=True)
class FixedTriple(Fixed):
    """Three edges fixed to the neighbors of a center vertex"""

    center: Optional[int] = None

    def __post_init__(self):
        super().__post_init__()
        if len(self.edges) != 3:
            raise ValueError("a fixed triple has three edges")


Group = Union[Singleton, CoupledPair, Fixed]


def _marginals_uniform(group: Group) -> bool:
    """Each endpoint of every edge in a random group is selected with probability 1/2"""
    outcomes = group.outcomes()
    if len(outcomes) == 1:
        return True
    for e in group.edges:
        p = sum((prob for prob, chosen in outcomes if e.u in chosen), ZERO)
        if p != HALF:
            return False
    return True


# ========== Scheme ==========

@dataclass(frozen=True)
class SelectionScheme:
    matching: Matching = field(repr=False)
    groups: tuple
    group_of_edge: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for i, group in enumerate(self.groups):
            for e in group.edges:
                if e in index:
                    raise ValueError(f"edge {e} appears in two groups")
                index[e] = i
            if not _marginals_uniform(group):
                raise ValueError(f"group {group} has non-uniform marginals")
        if set(index) != set(self.matching.edges):
            raise ValueError("groups must partition the matching edges exactly")
        object.__setattr__(self, "group_of_edge", index)

    @classmethod
    def from_groups(cls, matching: Matching, groups) -> "SelectionScheme":
        """Add Singletons for uncovered edges; order groups by their smallest edge"""
        covered = {e for g in groups for e in g.edges}
        all_groups = list(groups) + [Singleton(e) for e in matching.edges if e not in covered]
        all_groups.sort(key=lambda g: min(g.edges))
        return cls(matching, tuple(all_groups))

    def group_of_vertex(self, v: int) -> Optional[int]:
        e = self.matching.edge_of(v)
        return None if e is None else self.group_of_edge[e]

    def replace(self, i: int, group: Group) -> "SelectionScheme":
        groups = list(self.groups)
        groups[i] = group
        return SelectionScheme(self.matching, tuple(groups))

    def condition(self, i: int, chosen: frozenset) -> "SelectionScheme":
        return self.replace(i, Fixed(tuple(self.groups[i].edges), frozenset(chosen)))

    @property
    def is_uniform(self) -> bool:
        return all(isinstance(g, Singleton) for g in self.groups)

    @property
    def random_groups(self) -> list[int]:
        return [i for i, g in enumerate(self.groups) if len(g.outcomes()) > 1]


def uniform_scheme(m: Matching) -> SelectionScheme:
    if not is_maximal_matching(m.host, m):
        raise NotMaximal("uniform scheme needs a maximal matching")
    return SelectionScheme(m, tuple(Singleton(e) for e in m.edges))


# ========== Sampling ==========

def sample(scheme: SelectionScheme, seed: int) -> frozenset:
    """One draw of D; every group consumes one integer from the stream"""
    rng = np.random.default_rng(seed)
    chosen = set()
    for group in scheme.groups:
        outcomes = group.outcomes()
        pick = int(rng.integers(len(outcomes))) if len(outcomes) > 1 else 0
        chosen |= outcomes[pick][1]
    return frozenset(chosen)


def uncovered_set(g: Graph, m: Matching, d) -> frozenset:
    """B: unmatched vertices with no neighbor in d"""
    d_mask = mask_of(d)
    b_mask = 0
    for u in iter_bits(m.unmatched_mask):
        if not g.neighbor_mask(u) & d_mask:
            b_mask |= 1 << u
    if not is_dominating(g, iter_bits(d_mask | b_mask)):
        raise CertificateViolation("d_union_b_dominating", popcount(d_mask | b_mask), g.n)
    return members(b_mask)


# ========== Exact probabilities ==========

def _uncovered_probability(g: Graph, scheme: SelectionScheme, u: int) -> DyadicRational:
    nbrs = g.neighbor_mask(u)
    touched = sorted({i for w in iter_bits(nbrs) if (i := scheme.group_of_vertex(w)) is not None})
    prob = ONE
    for i in touched:
        miss = sum((p for p, chosen in scheme.groups[i].outcomes() if not nbrs & mask_of(chosen)), ZERO)
        prob = prob * miss
        if not prob:
            break
    return prob


def uncovered_probability(g: Graph, m: Matching, scheme: SelectionScheme, u: int) -> DyadicRational:
    """P[u in B]; groups are independent so it factors over the groups touching N(u)"""
    if m.vertex_mask >> u & 1:
        raise VertexMatched(f"vertex {u} is matched")
    return _uncovered_probability(g, scheme, u)


@dataclass(frozen=True)
class ExpectationReport:
    per_vertex: dict
    total: DyadicRational
    bound_rhs: DyadicRational


def expectation_report(g: Graph, m: Matching, scheme: SelectionScheme) -> ExpectationReport:
    """
    E[|B|] by linearity. bound_rhs is the sum of 2^-deg(u) over unmatched u,
    which is (n - 2|M|)/2^Delta on a Delta-regular graph.
    """
    per_vertex = {}
    total = ZERO
    bound = ZERO
    for u in iter_bits(m.unmatched_mask):
        p = _uncovered_probability(g, scheme, u)
        per_vertex[u] = p
        total = total + p
        bound = bound + DyadicRational.power_of_half(g.degree(u))
    if scheme.is_uniform and total > bound:
        raise CertificateViolation("uniform_expectation", total, bound)
    return ExpectationReport(per_vertex, total, bound)


def theorem1_bound(delta: int) -> Fraction:
    """1 + 2(Delta - 1) / (Delta 2^Delta)"""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    return 1 + Fraction(2 * (delta - 1), delta * 2 ** delta)


# ========== Derandomization ==========

@dataclass(frozen=True)
class FixingStep:
    group_index: int
    chosen: frozenset
    before: DyadicRational
    after: DyadicRational


def iter_conditional_fixings(g: Graph, m: Matching, scheme: SelectionScheme) -> Iterator[tuple[FixingStep, SelectionScheme]]:
    """Fix random groups in scheme order, each time to the outcome minimizing E[|B|]"""
    current = scheme
    expected = expectation_report(g, m, current).total
    for i in scheme.random_groups:
        best = None
        for _, chosen in current.groups[i].outcomes():
            candidate = current.condition(i, chosen)
            value = expectation_report(g, m, candidate).total
            if best is None or value < best[0]:
                best = (value, chosen, candidate)
        value, chosen, current = best
        yield FixingStep(i, chosen, expected, value), current
        expected = value


def derandomize_conditional(g: Graph, m: Matching, scheme: SelectionScheme) -> frozenset:
    """Deterministic D with |B| <= floor(E[|B|]) of the input scheme"""
    if not is_maximal_matching(g, m):
        raise NotMaximal("derandomization needs a maximal matching")
    initial = expectation_report(g, m, scheme).total
    current = scheme
    for step, current in iter_conditional_fixings(g, m, scheme):
        if step.after > step.before:
            raise CertificateViolation("conditional_monotone", step.after, step.before)
    d = frozenset().union(*(grp.outcomes()[0][1] for grp in current.groups))
    uncovered = uncovered_set(g, m, d)
    if len(uncovered) > math.floor(initial):
        raise CertificateViolation("derandomized_uncovered", len(uncovered), math.floor(initial))
    logger.debug(f"derandomize_conditional: |D|={len(d)} |B|={len(uncovered)} E0={initial}")
    return d


# ========== Monte Carlo ==========

@dataclass(frozen=True)
class MonteCarloResult:
    trials: int
    mean: float
    stderr: float
    best_size: int
    best_set: frozenset

    def agrees_with(self, expected, sigmas: float = 4.0) -> bool:
        """Sample mean of |B| within `sigmas` standard errors of the exact value"""
        target = float(expected)
        if self.stderr == 0:
            return abs(self.mean - target) < 1e-9
        return abs(self.mean - target) <= sigmas * self.stderr


def monte_carlo(g: Graph, m: Matching, scheme: SelectionScheme, trials: int, seed: int) -> MonteCarloResult:
    """Sample |B| `trials` times; also keeps the smallest D u B seen"""
    rng = np.random.default_rng(seed)
    groups = scheme.groups
    outcome_masks = [[mask_of(chosen) for _, chosen in grp.outcomes()] for grp in groups]
    widths = np.array([len(masks) for masks in outcome_masks], dtype=np.int64)
    picks = (rng.random((trials, len(groups))) * widths).astype(np.int64) if groups else np.zeros((trials, 0), np.int64)

    unmatched = list(iter_bits(m.unmatched_mask))
    rows = [g.neighbor_mask(u) for u in unmatched]
    sizes = np.empty(trials, dtype=np.int64)
    best_mask, best_size = None, None
    for t in range(trials):
        d_mask = 0
        for masks, pick in zip(outcome_masks, picks[t].tolist()):
            d_mask |= masks[pick]
        b_mask = 0
        for u, row in zip(unmatched, rows):
            if not row & d_mask:
                b_mask |= 1 << u
        sizes[t] = popcount(b_mask)
        total = popcount(d_mask | b_mask)
        if best_size is None or total < best_size:
            best_size, best_mask = total, d_mask | b_mask

    mean = float(sizes.mean()) if trials else 0.0
    stderr = float(sizes.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloResult(trials, mean, stderr, best_size or 0, members(best_mask or 0))
