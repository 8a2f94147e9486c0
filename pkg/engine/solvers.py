"""
Exact solvers

Branch-and-bound for the domination number, the edge domination number
(minimum maximal matching) and the independent domination number, plus the
verification predicates every construction is checked against.

Witnesses are the lexicographically smallest optimal sets: the search first
proves the optimum, then a second include-first pass over vertices (or
edges) in canonical order returns the first optimal set it meets.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import CapExceeded, CertificateViolation, EmptyEdgeSet, NotMaximal, NotRegular
from .graph import Edge, Graph, is_regular, line_graph
from .utils import iter_bits, lowest_bit, mask_of, members, popcount

logger = logging.getLogger(__name__)

DEFAULT_CAP = 64


# ========== Matchings ==========

@dataclass(frozen=True)
class Matching:
    """Pairwise disjoint edges of a host graph, kept in canonical order"""

    host: Graph = field(repr=False)
    edges: tuple[Edge, ...]
    vertex_mask: int = field(init=False, repr=False)
    _partner: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(sorted(Edge.of(*e) for e in self.edges))
        mask = 0
        partner = {}
        for e in edges:
            if not self.host.has_edge(e.u, e.v):
                raise ValueError(f"{e} is not an edge of the host graph")
            if mask & e.mask:
                raise ValueError(f"{e} shares an endpoint with another matching edge")
            mask |= e.mask
            partner[e.u] = e.v
            partner[e.v] = e.u
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertex_mask", mask)
        object.__setattr__(self, "_partner", partner)

    @classmethod
    def from_edges(cls, g: Graph, edges: Iterable[tuple[int, int]]) -> "Matching":
        return cls(g, tuple(Edge.of(a, b) for a, b in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        """V(M)"""
        return members(self.vertex_mask)

    @property
    def unmatched_mask(self) -> int:
        return self.host.full_mask & ~self.vertex_mask

    def partner(self, v: int) -> Optional[int]:
        return self._partner.get(v)

    def edge_of(self, v: int) -> Optional[Edge]:
        w = self._partner.get(v)
        return None if w is None else Edge.of(v, w)

    def is_transversal(self, d: Iterable[int]) -> bool:
        """True iff d holds exactly one endpoint of every edge and nothing else"""
        d = frozenset(d)
        return len(d) == len(self.edges) and all((e.u in d) != (e.v in d) for e in self.edges)


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: Union[frozenset, Matching]
    nodes_explored: int


# ========== Predicates ==========

def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    return g.closed_neighborhood_union(mask_of(d)) == g.full_mask


def is_maximal_matching(g: Graph, m: Matching) -> bool:
    """No edge of g has both endpoints outside V(M)"""
    free = g.full_mask & ~m.vertex_mask
    return all(not (g.neighbor_mask(v) & free) for v in iter_bits(free))


def greedy_maximal_matching(g: Graph) -> Matching:
    used = 0
    chosen = []
    for e in g.edges():
        if not used & e.mask:
            chosen.append(e)
            used |= e.mask
    return Matching(g, tuple(chosen))


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(n, cap)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ========== Vertex domination ==========

def _greedy_dominating_mask(g: Graph) -> int:
    chosen, dominated = 0, 0
    while dominated != g.full_mask:
        best = max(range(g.n), key=lambda v: (popcount(g.closed_mask(v) & ~dominated), -v))
        chosen |= 1 << best
        dominated |= g.closed_mask(best)
    return chosen


def _domination_search(g: Graph, independent: bool, upper: int, upper_mask: int) -> tuple[int, int, int]:
    """
    Branch on the lowest undominated vertex, trying each member of its closed
    neighborhood. Returns (best size, best mask, nodes).
    """
    full = g.full_mask
    spread = g.max_degree + 1
    best = [upper, upper_mask]
    nodes = 0

    def search(chosen: int, dominated: int, size: int) -> None:
        nonlocal nodes
        nodes += 1
        undominated = full & ~dominated
        if not undominated:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _ceil_div(popcount(undominated), spread) >= best[0]:
            return
        u = lowest_bit(undominated)
        candidates = g.closed_mask(u)
        if independent:
            candidates &= ~dominated
        for w in iter_bits(candidates):
            search(chosen | 1 << w, dominated | g.closed_mask(w), size + 1)

    search(0, 0, 0)
    return best[0], best[1], nodes


def _lex_first_dominating(g: Graph, k: int) -> Optional[int]:
    """Lexicographically smallest dominating set of size at most k"""
    n, full = g.n, g.full_mask
    spread = g.max_degree + 1
    # settled[i]: vertices whose closed neighborhood lies entirely below i
    settled = [0] * (n + 1)
    for u in range(n):
        top = g.closed_mask(u).bit_length()
        for i in range(top, n + 1):
            settled[i] |= 1 << u

    def dfs(i: int, chosen: int, dominated: int, size: int) -> Optional[int]:
        undominated = full & ~dominated
        if not undominated:
            return chosen
        if size == k or i == n or undominated & settled[i]:
            return None
        if size + _ceil_div(popcount(undominated), spread) > k:
            return None
        found = dfs(i + 1, chosen | 1 << i, dominated | g.closed_mask(i), size + 1)
        if found is not None:
            return found
        return dfs(i + 1, chosen, dominated, size)

    return dfs(0, 0, 0, 0)


def domination_number(g: Graph, cap: int = DEFAULT_CAP) -> SolveResult:
    """gamma(g) with the lexicographically smallest minimum dominating set"""
    _check_cap(g.n, cap)
    if g.n == 0:
        return SolveResult(0, frozenset(), 0)
    greedy = _greedy_dominating_mask(g)
    value, _, nodes = _domination_search(g, False, popcount(greedy), greedy)
    witness = _lex_first_dominating(g, value)
    logger.debug(f"domination_number: n={g.n} gamma={value} nodes={nodes}")
    return SolveResult(value, members(witness), nodes)


def independent_domination_number(g: Graph, cap: int = DEFAULT_CAP) -> SolveResult:
    """i(g): minimum size of a maximal independent set"""
    _check_cap(g.n, cap)
    if g.n == 0:
        return SolveResult(0, frozenset(), 0)
    value, mask, nodes = _domination_search(g, True, g.n + 1, 0)
    logger.debug(f"independent_domination_number: n={g.n} i={value} nodes={nodes}")
    return SolveResult(value, members(mask), nodes)


# ========== Edge domination ==========

class _EdgeIndex:
    """Edge list with incidence and conflict masks over edge indices"""

    def __init__(self, g: Graph):
        self.edges = g.edges()
        self.count = len(self.edges)
        self.incident = [0] * g.n
        for i, e in enumerate(self.edges):
            self.incident[e.u] |= 1 << i
            self.incident[e.v] |= 1 << i
        self.conflict = [self.incident[e.u] | self.incident[e.v] for e in self.edges]
        # kill bound: one added edge retires at most 2*Delta - 1 free edges
        self.spread = max(1, 2 * g.max_degree - 1)

    def take(self, alive: int, j: int) -> int:
        return alive & ~self.conflict[j]


def _edge_domination_search(index: _EdgeIndex, upper: int, upper_mask: int) -> tuple[int, int, int]:
    best = [upper, upper_mask]
    nodes = 0

    def search(alive: int, chosen: int, size: int) -> None:
        nonlocal nodes
        nodes += 1
        if not alive:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _ceil_div(popcount(alive), index.spread) >= best[0]:
            return
        # the lowest free edge or a free edge meeting it joins every maximal extension
        i = lowest_bit(alive)
        for j in iter_bits(index.conflict[i] & alive):
            search(index.take(alive, j), chosen | 1 << j, size + 1)

    search((1 << index.count) - 1, 0, 0)
    return best[0], best[1], nodes


def _lex_first_maximal_matching(index: _EdgeIndex, k: int) -> Optional[int]:
    count = index.count
    settled = [0] * (count + 1)
    for i in range(count):
        top = index.conflict[i].bit_length()
        for j in range(top, count + 1):
            settled[j] |= 1 << i

    def dfs(j: int, alive: int, chosen: int, size: int) -> Optional[int]:
        if not alive:
            return chosen
        if size == k or j == count or alive & settled[j]:
            return None
        if size + _ceil_div(popcount(alive), index.spread) > k:
            return None
        if alive >> j & 1:
            found = dfs(j + 1, index.take(alive, j), chosen | 1 << j, size + 1)
            if found is not None:
                return found
        return dfs(j + 1, alive, chosen, size)

    return dfs(0, (1 << count) - 1, 0, 0)


def edge_domination_number(g: Graph, cap: int = DEFAULT_CAP) -> SolveResult:
    """gamma_e(g) with the lexicographically smallest minimum maximal matching"""
    _check_cap(g.n, cap)
    if g.edge_count == 0:
        raise EmptyEdgeSet("edge domination number of an edgeless graph")
    index = _EdgeIndex(g)
    greedy = greedy_maximal_matching(g)
    greedy_mask = mask_of(index.edges.index(e) for e in greedy.edges)
    value, _, nodes = _edge_domination_search(index, len(greedy), greedy_mask)
    witness = _lex_first_maximal_matching(index, value)
    matching = Matching(g, tuple(index.edges[j] for j in iter_bits(witness)))
    logger.debug(f"edge_domination_number: n={g.n} gamma_e={value} nodes={nodes}")
    return SolveResult(value, matching, nodes)


# ========== Certificates ==========

@dataclass(frozen=True)
class InequalityCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    def __bool__(self) -> bool:
        return self.holds


def check_inequality_e1(g: Graph, m: Matching) -> InequalityCheck:
    """Delta(n - 2|M|) <= 2(Delta - 1)|M| for a maximal matching of a regular graph"""
    delta = is_regular(g)
    if delta is None:
        raise NotRegular("inequality (e1) needs a regular graph")
    if not is_maximal_matching(g, m):
        raise NotMaximal("inequality (e1) needs a maximal matching")
    check = InequalityCheck(Fraction(delta * (g.n - 2 * len(m))), Fraction(2 * (delta - 1) * len(m)))
    if not check.holds:
        raise CertificateViolation("e1", check.lhs, check.rhs)
    return check


@dataclass(frozen=True)
class LineGraphCrossCheck:
    gamma_e: int
    gamma_line: int
    independent_line: int

    @property
    def holds(self) -> bool:
        return self.gamma_e == self.gamma_line == self.independent_line

    def __bool__(self) -> bool:
        return self.holds


def cross_check_line_graph(g: Graph, cap: int = DEFAULT_CAP) -> LineGraphCrossCheck:
    """gamma_e(g), gamma(L(g)) and i(L(g)) must coincide"""
    _check_cap(g.n, cap)
    lg = line_graph(g).graph
    _check_cap(lg.n, cap)
    check = LineGraphCrossCheck(
        gamma_e=edge_domination_number(g, cap).value,
        gamma_line=domination_number(lg, cap).value,
        independent_line=independent_domination_number(lg, cap).value,
    )
    if not check.holds:
        logger.error(f"line graph cross check failed: {check}")
    return check
