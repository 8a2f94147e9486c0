"""
Cubic refinement

Improves the uniform transversal on cubic graphs in two passes:

1. couple a maximal collection of disjoint edge pairs whose X set (unmatched
   vertices always dominated after coupling) beats their Y set;
2. repeatedly pick a center z in the residue, fix the three endpoints next to
   z and drop from the residue every vertex that touches the triple or its
   shadow S(tau).

Every run ends in an exact certificate: E[|B|] is recomputed from the final
scheme and checked against the additive accounting and the 11/68, 79/68
bounds, all with rational arithmetic.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .dyadic import DyadicRational
from .errors import CertificateViolation, NotConnected, NotCubic, NotMaximal, PropertyThreeViolation
from .graph import Edge, Graph, connected_components, is_connected, is_cubic
from .graph6 import graph6_str
from .schemes import (
    CoupledPair,
    FixedTriple,
    SelectionScheme,
    Singleton,
    derandomize_conditional,
    expectation_report,
    uncovered_set,
)
from .solvers import Matching, is_dominating, is_maximal_matching
from .utils import iter_bits, mask_of, members, popcount

logger = logging.getLogger(__name__)


# ========== Types ==========

@dataclass(frozen=True)
class CouplablePair:
    """Edges uv and u'v' under the labeling where |X| > |Y|"""

    u: int
    v: int
    u2: int
    v2: int
    x: frozenset
    y: frozenset

    @property
    def first(self) -> Edge:
        return Edge.of(self.u, self.v)

    @property
    def second(self) -> Edge:
        return Edge.of(self.u2, self.v2)

    @property
    def outcomes(self) -> tuple[frozenset, frozenset]:
        return frozenset({self.u, self.v2}), frozenset({self.u2, self.v})

    def as_group(self) -> CoupledPair:
        a, b = self.outcomes
        return CoupledPair(self.first, self.second, a, b)


@dataclass(frozen=True)
class ResidueClassification:
    r0_set: frozenset
    r_set: frozenset
    r1_set: frozenset
    r2_set: frozenset
    r3_set: frozenset
    current: frozenset  # R^(1), where triple centers start
    s_paired: frozenset
    s_paired_prime: frozenset
    p: int
    t: int = 0

    @property
    def r(self) -> int:
        return len(self.r_set)

    @property
    def r0(self) -> int:
        return len(self.r0_set)

    @property
    def r1(self) -> int:
        return len(self.r1_set)

    @property
    def r2(self) -> int:
        return len(self.r2_set)

    @property
    def r3(self) -> int:
        return len(self.r3_set)

    @property
    def r_superscript_1(self) -> int:
        return len(self.current)


class TripleCase(str, Enum):
    CASE1 = "case1"
    CASE2 = "case2"
    ORDER10_SHORTCUT = "order10_shortcut"


@dataclass(frozen=True)
class TripleTrace:
    center: int
    edges: tuple  # (u_i, v_i) with u_i adjacent to the center
    s_tau: frozenset
    removed_from_r: frozenset
    case_tag: TripleCase
    reduction_credit: DyadicRational

    @property
    def endpoints(self) -> frozenset:
        return frozenset(u for u, _ in self.edges)


@dataclass(frozen=True)
class Theorem2Scheme:
    scheme: SelectionScheme
    classification: ResidueClassification
    pairs: tuple
    traces: tuple


@dataclass(frozen=True)
class ShortcutDominatingSet:
    vertices: frozenset
    trace: TripleTrace


@dataclass(frozen=True)
class CertificateCheck:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class Theorem2Certificate:
    expected_uncovered: DyadicRational
    checks: tuple

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    def check(self, name: str) -> CertificateCheck:
        return next(c for c in self.checks if c.name == name)


# ========== Residue ==========

def _residue_masks(g: Graph, m: Matching) -> tuple[int, int]:
    """(R0, R): unmatched vertices seeing both ends of some M-edge, and the rest"""
    r0 = 0
    for u in iter_bits(m.unmatched_mask):
        nbrs = g.neighbor_mask(u)
        if any((w_partner := m.partner(w)) is not None and nbrs >> w_partner & 1 for w in iter_bits(nbrs)):
            r0 |= 1 << u
    return r0, m.unmatched_mask & ~r0


def _require_cubic(g: Graph, m: Matching, relaxed_degree: bool = False) -> None:
    if not relaxed_degree and not is_cubic(g):
        raise NotCubic("cubic refinement needs a cubic graph")
    if not is_maximal_matching(g, m):
        raise NotMaximal("cubic refinement needs a maximal matching")


def find_coupled_pairs(g: Graph, m: Matching, relaxed_degree: bool = False) -> list[CouplablePair]:
    """
    Greedy maximal collection of disjoint couplable pairs in canonical pair order.

    X and Y only contain vertices of R touching both edges, so only pairs
    sharing such a vertex are candidates. For a pair (ab, cd) in canonical
    order, flipping cd swaps X and Y, so exactly one labeling qualifies
    whenever |X| != |Y|.
    """
    _require_cubic(g, m, relaxed_degree)
    _, r_mask = _residue_masks(g, m)

    touching: dict[tuple[Edge, Edge], list[int]] = {}
    for x in iter_bits(r_mask):
        edges = sorted({m.edge_of(w) for w in iter_bits(g.neighbor_mask(x))})
        for e1, e2 in combinations(edges, 2):
            touching.setdefault((e1, e2), []).append(x)

    pairs = []
    used: set[Edge] = set()
    for (e1, e2) in sorted(touching):
        if e1 in used or e2 in used:
            continue
        a, b = e1
        c, d = e2
        straight, crossed = [], []
        for x in touching[(e1, e2)]:
            hit = frozenset(w for w in (a, b, c, d) if g.has_edge(x, w))
            if hit in ({a, c}, {b, d}):
                straight.append(x)
            elif hit in ({a, d}, {b, c}):
                crossed.append(x)
        if len(straight) > len(crossed):
            pair = CouplablePair(a, b, c, d, frozenset(straight), frozenset(crossed))
        elif len(crossed) > len(straight):
            pair = CouplablePair(a, b, d, c, frozenset(crossed), frozenset(straight))
        else:
            continue
        pairs.append(pair)
        used.update((e1, e2))
        logger.debug(f"coupled {e1} with {e2}: |X|={len(pair.x)} |Y|={len(pair.y)}")
    return pairs


def classify_residue(g: Graph, m: Matching, pairs: list[CouplablePair]) -> ResidueClassification:
    r0_mask, r_mask = _residue_masks(g, m)
    s_paired = 0
    for pair in pairs:
        s_paired |= pair.first.mask | pair.second.mask

    r1_mask = r2_mask = 0
    for w in iter_bits(r_mask):
        hits = popcount(g.neighbor_mask(w) & s_paired)
        if hits == 1:
            r1_mask |= 1 << w
        elif hits >= 2:
            r2_mask |= 1 << w

    s_prime = 0
    for w in iter_bits(r0_mask | r2_mask):
        for y in iter_bits(g.neighbor_mask(w)):
            e = m.edge_of(y)
            if e is not None and not e.mask & s_paired:
                s_prime |= e.mask

    r3_mask = 0
    for w in iter_bits(r_mask & ~(r1_mask | r2_mask)):
        if g.neighbor_mask(w) & s_prime:
            r3_mask |= 1 << w

    current = r_mask & ~(r1_mask | r2_mask | r3_mask)
    result = ResidueClassification(
        r0_set=members(r0_mask),
        r_set=members(r_mask),
        r1_set=members(r1_mask),
        r2_set=members(r2_mask),
        r3_set=members(r3_mask),
        current=members(current),
        s_paired=members(s_paired),
        s_paired_prime=members(s_prime),
        p=len(pairs),
    )

    p, r, r0 = result.p, result.r, result.r0
    counts = [
        ("edges_leaving_s_paired", 2 * result.r2 + result.r1, 8 * p),
        ("r3_bound", result.r3, 12 * r0 + 6 * result.r2),
        ("r_superscript_1_bound", r - 13 * r0 - 28 * p, result.r_superscript_1),
    ]
    for name, lhs, rhs in counts:
        if lhs > rhs:
            raise CertificateViolation(name, lhs, rhs, graph6_str(g))
    return result


# ========== Triples ==========

def order10_shortcut(g: Graph, m: Matching, center: int) -> Optional[frozenset]:
    """
    The three endpoints next to `center`, if they already dominate g.

    Only meaningful for a valid triple shape (unmatched center, neighbors in
    three distinct matching edges) and when |M| >= 3, so the answer is never
    larger than the matching.
    """
    if not is_connected(g) or len(m) < 3 or m.vertex_mask >> center & 1:
        return None
    nbrs = g.neighbors(center)
    if len(nbrs) != 3 or len({m.edge_of(w) for w in nbrs} - {None}) != 3:
        return None
    if is_dominating(g, nbrs):
        return frozenset(nbrs)
    return None


def _check_property_three(g: Graph, scheme: SelectionScheme, r_mask: int, tau_mask: int) -> list[int]:
    """
    Vertices of R next to V(tau) must see three distinct, still random groups.
    Returns those vertices.
    """
    affected = []
    for w in iter_bits(r_mask):
        if not g.neighbor_mask(w) & tau_mask:
            continue
        groups = [scheme.group_of_vertex(y) for y in iter_bits(g.neighbor_mask(w))]
        groups = [i for i in groups if i is not None]
        if len(set(groups)) != len(groups):
            raise PropertyThreeViolation(f"vertex {w} has two neighbors in one group", w, graph6_str(g))
        if any(isinstance(scheme.groups[i], FixedTriple) for i in groups):
            raise PropertyThreeViolation(f"vertex {w} already sees a fixed triple", w, graph6_str(g))
        affected.append(w)
    return affected


def derandomize_triples(
    g: Graph,
    m: Matching,
    pairs: list[CouplablePair],
    classification: ResidueClassification,
) -> tuple[list[FixedTriple], list[TripleTrace]]:
    """Form triples around the lowest remaining center until the residue is empty"""
    if not is_cubic(g):
        raise NotCubic("triple derandomization needs a cubic graph")
    pair_groups = [pair.as_group() for pair in pairs]
    r_mask = mask_of(classification.r_set)
    current = mask_of(classification.current)
    triples: list[FixedTriple] = []
    traces: list[TripleTrace] = []

    scheme = SelectionScheme.from_groups(m, pair_groups)
    expected = expectation_report(g, m, scheme).total

    while current:
        z = (current & -current).bit_length() - 1
        nbrs = g.neighbors(z)
        edges = [m.edge_of(w) for w in nbrs]
        if None in edges or len(set(edges)) != 3:
            raise PropertyThreeViolation(f"center {z} does not see three distinct matching edges", z, graph6_str(g))
        for e in edges:
            if not isinstance(scheme.groups[scheme.group_of_edge[e]], Singleton):
                raise PropertyThreeViolation(f"triple edge {e} around {z} is no longer a singleton", z, graph6_str(g))

        tau_mask = mask_of(v for e in edges for v in e)
        affected = _check_property_three(g, scheme, r_mask, tau_mask)

        s_tau = 0
        for w in affected:
            for y in iter_bits(g.neighbor_mask(w) & ~tau_mask):
                e = m.edge_of(y)
                if e is not None:
                    s_tau |= e.mask
        removed = 0
        for w in iter_bits(current):
            if g.neighbor_mask(w) & (tau_mask | s_tau):
                removed |= 1 << w

        if order10_shortcut(g, m, z) is not None:
            case = TripleCase.ORDER10_SHORTCUT
        elif any(w != z and popcount(g.neighbor_mask(w) & tau_mask) == 3 for w in iter_bits(r_mask)):
            case = TripleCase.CASE1
        else:
            case = TripleCase.CASE2

        triple = FixedTriple(tuple(edges), frozenset(nbrs), center=z)
        triples.append(triple)
        scheme = SelectionScheme.from_groups(m, pair_groups + triples)
        after = expectation_report(g, m, scheme).total

        trace = TripleTrace(
            center=z,
            edges=tuple((u, m.partner(u)) for u in nbrs),
            s_tau=members(s_tau),
            removed_from_r=members(removed),
            case_tag=case,
            reduction_credit=expected - after,
        )
        traces.append(trace)
        logger.debug(f"triple #{len(traces)} center={z} case={case.value} |S|={len(trace.s_tau)} "
                     f"removed={len(trace.removed_from_r)} credit={trace.reduction_credit}")
        expected = after
        current &= ~removed

    return triples, traces


# ========== Pipeline ==========

def build_theorem2_scheme(
    g: Graph, m: Matching, shortcut: bool = True
) -> Union[Theorem2Scheme, ShortcutDominatingSet]:
    """Couple all pairs, derandomize all triples; singletons for the rest"""
    if not is_cubic(g):
        raise NotCubic("theorem 2 scheme needs a cubic graph")
    if not is_connected(g):
        raise NotConnected("theorem 2 scheme needs a connected graph; split into components first")

    pairs = find_coupled_pairs(g, m)
    classification = classify_residue(g, m, pairs)
    triples, traces = derandomize_triples(g, m, pairs, classification)

    trace = _shortcut_trace(traces) if shortcut else None
    if trace is not None:
        logger.info(f"shortcut: {sorted(trace.endpoints)} dominates the graph")
        return ShortcutDominatingSet(trace.endpoints, trace)

    scheme = SelectionScheme.from_groups(m, [p.as_group() for p in pairs] + triples)
    classification = replace(classification, t=len(triples))
    return Theorem2Scheme(scheme, classification, tuple(pairs), tuple(traces))


def _shortcut_trace(traces) -> Optional[TripleTrace]:
    return next((t for t in traces if t.case_tag is TripleCase.ORDER10_SHORTCUT), None)


def _fraction(value) -> Fraction:
    return value.to_fraction() if isinstance(value, DyadicRational) else Fraction(value)


def theorem2_certificate(
    g: Graph,
    m: Matching,
    scheme: SelectionScheme,
    classification: ResidueClassification,
    traces,
    pairs=(),
) -> Theorem2Certificate:
    """Exact E[|B|] of the final scheme against every bound of the cubic accounting"""
    report = expectation_report(g, m, scheme)
    e = report.total.to_fraction()
    size = len(m)
    free = g.n - 2 * size
    r, r0, p, t = classification.r, classification.r0, classification.p, len(traces)

    checks = [
        CertificateCheck("a", e, Fraction(r - p - t, 8)),
        CertificateCheck("b", e, Fraction(33, 272) * free - Fraction(5, 68) * r0 - Fraction(3, 136) * p),
        CertificateCheck("c", e, Fraction(11, 68) * size),
        CertificateCheck("d", size + e, Fraction(79, 68) * size),
        CertificateCheck("t_lower", Fraction(math.ceil(Fraction(classification.r_superscript_1, 34))), Fraction(t)),
    ]

    for pair in pairs:
        for x in sorted(pair.x):
            checks.append(CertificateCheck(f"pair_x_zero[{x}]", _fraction(report.per_vertex[x]), Fraction(0)))
        for y in sorted(pair.y):
            third = [w for w in g.neighbors(y) if w not in (pair.u, pair.v, pair.u2, pair.v2)]
            groups = [scheme.groups[scheme.group_of_vertex(w)] for w in third]
            if len(groups) == 1 and isinstance(groups[0], Singleton):
                gap = abs(_fraction(report.per_vertex[y]) - Fraction(1, 4))
                checks.append(CertificateCheck(f"pair_y_quarter[{y}]", gap, Fraction(0)))

    fixed_edges = {e for grp in scheme.groups if isinstance(grp, FixedTriple) for e in grp.edges}
    for i, trace in enumerate(traces, start=1):
        case1 = trace.case_tag is TripleCase.CASE1
        checks.append(CertificateCheck(f"s_tau[{i}]", Fraction(len(trace.s_tau)), Fraction(12 if case1 else 18)))
        checks.append(CertificateCheck(f"removed[{i}]", Fraction(len(trace.removed_from_r)), Fraction(24 if case1 else 34)))
        checks.append(CertificateCheck(f"credit[{i}]", Fraction(1, 8), _fraction(trace.reduction_credit)))
        # shadow edges may belong to coupled pairs (reached through R1 vertices); they must not be fixed
        shadow = {m.edge_of(v) for v in trace.s_tau}
        checks.append(CertificateCheck(f"s_tau_unfixed[{i}]", Fraction(len(shadow & fixed_edges)), Fraction(0)))

    certificate = Theorem2Certificate(report.total, tuple(checks))
    for check in checks:
        if not check.holds:
            logger.error(f"theorem 2 certificate {check.name} failed on {graph6_str(g)}")
            raise CertificateViolation(check.name, check.lhs, check.rhs, graph6_str(g))
    return certificate


# ========== Whole-graph construction ==========

@dataclass(frozen=True)
class ComponentResult:
    vertices: frozenset
    dominating_set: frozenset
    matching_size: int
    expected_uncovered: DyadicRational
    certificate: Theorem2Certificate
    shortcut: bool  # dominating_set is the shortcut triple rather than D u B


@dataclass(frozen=True)
class Theorem2Result:
    dominating_set: frozenset
    components: tuple = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return len(self.dominating_set)


def _restrict(m: Matching, sub: Graph, labels: tuple) -> Matching:
    index = {old: new for new, old in enumerate(labels)}
    return Matching.from_edges(sub, [(index[e.u], index[e.v]) for e in m.edges if e.u in index])


def theorem2_dominating_set(g: Graph, m: Matching, shortcut: bool = True) -> Theorem2Result:
    """
    Per component: build and certify the full scheme, then either take the
    order-10 shortcut or fix the remaining singletons by conditional
    expectations and return D u B. Shortcut components are certified too.
    """
    _require_cubic(g, m)
    chosen: set[int] = set()
    results = []
    for component in connected_components(g):
        sub, labels = g.induced_subgraph(component)
        sub_m = _restrict(m, sub, labels)
        outcome = build_theorem2_scheme(sub, sub_m, shortcut=False)
        certificate = theorem2_certificate(
            sub, sub_m, outcome.scheme, outcome.classification, outcome.traces, outcome.pairs
        )

        trace = _shortcut_trace(outcome.traces) if shortcut else None
        if trace is not None:
            logger.info(f"shortcut: {sorted(trace.endpoints)} dominates a component of order {sub.n}")
            local = trace.endpoints
        else:
            d = derandomize_conditional(sub, sub_m, outcome.scheme)
            local = d | uncovered_set(sub, sub_m, d)
            limit = math.floor(len(sub_m) + certificate.expected_uncovered.to_fraction())
            if len(local) > limit:
                raise CertificateViolation("component_size", len(local), limit, graph6_str(sub))
        results.append(ComponentResult(
            component, frozenset(labels[v] for v in local), len(sub_m),
            certificate.expected_uncovered, certificate, trace is not None,
        ))
        chosen.update(labels[v] for v in local)

    result = Theorem2Result(frozenset(chosen), tuple(results))
    limit = math.floor(Fraction(79, 68) * len(m))
    if not is_dominating(g, result.dominating_set) or result.size > limit:
        raise CertificateViolation("theorem2_dominating_set", result.size, limit, graph6_str(g))
    return result
