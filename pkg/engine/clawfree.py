"""
Exchange search for cubic claw-free graphs

Starts from any transversal D of a maximal matching and applies moves that
strictly shrink B (unmatched vertices with no neighbor in D) until B is
empty. Moves are single endpoint swaps, then alternating path swaps along a
sequence v1, u1, c1, v2, u2, c2, ... grown from a vertex of B. On cubic
claw-free graphs one of them always applies, so the result is a dominating
set of size |M|.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from .errors import NoImprovement, NoImprovingMove, NotClawFree, NotCubic, NotMaximal, StructureViolation
from .graph import Edge, Graph, is_claw_free, is_cubic
from .graph6 import graph6_str
from .solvers import Matching, is_dominating, is_maximal_matching
from .utils import iter_bits, mask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Move:
    kind: str  # "single" or "path"
    removed: frozenset
    added: frozenset
    uncovered_before: int
    uncovered_after: int
    origin: Optional[int] = None


@dataclass(frozen=True)
class ExchangeState:
    matching: Matching = field(repr=False)
    d: frozenset
    b: frozenset
    c: frozenset
    moves: tuple = ()

    @classmethod
    def from_transversal(cls, m: Matching, d, moves: tuple = ()) -> "ExchangeState":
        d = frozenset(d)
        if not m.is_transversal(d):
            raise StructureViolation(f"{sorted(d)} is not a transversal of the matching")
        g = m.host
        d_mask = mask_of(d)
        b, c = [], []
        for u in iter_bits(m.unmatched_mask):
            hits = g.neighbor_mask(u) & d_mask
            if not hits:
                b.append(u)
            elif hits & (hits - 1) == 0:
                c.append(u)
        return cls(m, d, frozenset(b), frozenset(c), moves)

    def apply(self, d, kind: str, origin: Optional[int] = None) -> "ExchangeState":
        d = frozenset(d)
        nxt = ExchangeState.from_transversal(self.matching, d)
        move = Move(kind, self.d - d, d - self.d, len(self.b), len(nxt.b), origin)
        return ExchangeState(self.matching, nxt.d, nxt.b, nxt.c, self.moves + (move,))

    def to_dict(self) -> dict:
        return {
            "graph6": graph6_str(self.matching.host),
            "matching": [list(e) for e in self.matching.edges],
            "d": sorted(self.d),
            "b": sorted(self.b),
            "c": sorted(self.c),
            "moves": len(self.moves),
        }


@dataclass(frozen=True)
class SigmaSequence:
    b: int
    v_minus: int
    v0: int
    x: int
    triples: tuple  # (v_i, u_i, c_i)
    terminal: tuple  # (u_{k+1}, v_{k+1})

    @property
    def k(self) -> int:
        return len(self.triples)

    @property
    def leaving(self) -> tuple:
        """u_1 .. u_{k+1}"""
        return tuple(u for _, u, _ in self.triples) + (self.terminal[0],)

    @property
    def entering(self) -> tuple:
        """v_1 .. v_{k+1}"""
        return tuple(v for v, _, _ in self.triples) + (self.terminal[1],)


def initial_transversal(m: Matching) -> frozenset:
    """Lower endpoint of every matching edge"""
    return frozenset(e.u for e in m.edges)


def single_swap_improvement(g: Graph, m: Matching, state: ExchangeState) -> Optional[tuple[Edge, int]]:
    """First edge, in canonical order, whose endpoint swap strictly shrinks B"""
    if not state.b:
        return None
    for e in m.edges:
        old = e.u if e.u in state.d else e.v
        new = e.other(old)
        trial = ExchangeState.from_transversal(m, (state.d - {old}) | {new})
        if len(trial.b) < len(state.b):
            return e, new
    return None


def _require_cubic_claw_free(g: Graph) -> None:
    if not is_cubic(g):
        raise NotCubic("exchange search needs a cubic graph")
    if not is_claw_free(g):
        raise NotClawFree("exchange search needs a claw-free graph")


def build_sigma(g: Graph, m: Matching, state: ExchangeState, b: int, flip: bool = False) -> SigmaSequence:
    """
    Label N(b) = {v_-1, v0, v1} with v0v1 the adjacent pair (flip swaps v0
    and v1), find x and grow the maximal sequence from u1.
    """
    _require_cubic_claw_free(g)
    if b not in state.b:
        raise StructureViolation(f"vertex {b} is not uncovered", b)

    nbrs = g.neighbors(b)
    if any(m.partner(v) is None for v in nbrs) or len({m.edge_of(v) for v in nbrs}) != 3:
        raise StructureViolation(f"neighbors of {b} do not lie on three distinct matching edges", b)
    adjacent = [(p, q) for i, p in enumerate(nbrs) for q in nbrs[i + 1:] if g.has_edge(p, q)]
    if len(adjacent) != 1:
        raise StructureViolation(f"neighbors of {b} contain {len(adjacent)} adjacent pairs", b)
    v0, v1 = adjacent[0][::-1] if flip else adjacent[0]
    (v_minus,) = [v for v in nbrs if v not in (v0, v1)]
    u_minus, u0, u1 = m.partner(v_minus), m.partner(v0), m.partner(v1)

    (x,) = [w for w in g.neighbors(v_minus) if w not in (u_minus, b)]
    if not g.has_edge(x, u_minus):
        raise StructureViolation(f"{x} is not adjacent to {u_minus}", x)
    if x in (u0, u1):
        raise StructureViolation(f"{x} lies on the adjacent pair's matching edges; a single swap applies", x)

    used = {u_minus, u0, v_minus, v0, b, x}
    triples = []
    v, u = v1, u1
    while True:
        if v in used:
            raise StructureViolation(f"sequence revisits {v}", v)
        if u in used:
            if u == x and triples:
                break
            raise StructureViolation(f"sequence revisits {u}", u)
        if u not in state.d:
            raise StructureViolation(f"{u} should be in the transversal", u)
        options = [c for c in g.neighbors(u) if c in state.c and c not in used]
        if not options:
            break
        c = min(options)
        (w,) = [y for y in g.neighbors(u) if y not in (v, c)]
        if not g.has_edge(w, c):
            raise StructureViolation(f"{w} is not adjacent to {c}", w)
        if m.partner(w) is None:
            raise StructureViolation(f"{w} is unmatched", w)
        triples.append((v, u, c))
        used.update((v, u, c))
        v, u = w, m.partner(w)

    sigma = SigmaSequence(b, v_minus, v0, x, tuple(triples), (u, v))
    logger.debug(f"sigma from b={b} flip={flip}: k={sigma.k} terminal={sigma.terminal}")
    return sigma


def path_swap(state: ExchangeState, sigma: SigmaSequence) -> frozenset:
    """D' = D - {u_1..u_{k+1}} + {v_1..v_{k+1}}; must shrink B"""
    d = (state.d - set(sigma.leaving)) | set(sigma.entering)
    m = state.matching
    if not m.is_transversal(d):
        raise NoImprovement(f"path swap from {sigma.b} breaks the transversal")
    after = ExchangeState.from_transversal(m, d)
    if len(after.b) >= len(state.b):
        raise NoImprovement(f"path swap from {sigma.b} leaves |B| at {len(after.b)} (was {len(state.b)})")
    return d


def _path_move(g: Graph, m: Matching, state: ExchangeState) -> Optional[tuple[frozenset, int]]:
    for b in sorted(state.b):
        for flip in (False, True):
            try:
                sigma = build_sigma(g, m, state, b, flip)
                return path_swap(state, sigma), b
            except (StructureViolation, NoImprovement) as e:
                logger.debug(f"no path move from b={b} flip={flip}: {e}")
    return None


def exchange_search(g: Graph, m: Matching, start=None) -> ExchangeState:
    """Run the local search to a state with B empty; returns the final state with its move log"""
    _require_cubic_claw_free(g)
    if not is_maximal_matching(g, m):
        raise NotMaximal("exchange search needs a maximal matching")

    state = ExchangeState.from_transversal(m, initial_transversal(m) if start is None else start)
    while state.b:
        swap = single_swap_improvement(g, m, state)
        if swap is not None:
            e, new = swap
            state = state.apply((state.d - {e.other(new)}) | {new}, "single")
            continue
        found = _path_move(g, m, state)
        if found is None:
            logger.error(f"no improving move on {graph6_str(g)} with |B|={len(state.b)}")
            raise NoImprovingMove(f"stuck with B={sorted(state.b)}", state.to_dict())
        d, b = found
        state = state.apply(d, "path", origin=b)

    logger.debug(f"exchange search: {len(state.moves)} moves")
    return state


def dominating_transversal(g: Graph, m: Matching) -> frozenset:
    """A transversal of m that dominates g"""
    d = exchange_search(g, m).d
    if not is_dominating(g, d):
        raise StructureViolation(f"final transversal {sorted(d)} does not dominate")
    return d
