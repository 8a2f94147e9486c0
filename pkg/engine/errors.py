"""
Exception hierarchy for the domination toolkit.

Errors that carry evidence (a failed inequality, a serialized state) keep it
as attributes so the harness can put it into the report.
"""

from typing import Any, Optional


class DomcheckError(Exception):
    """Root of every error raised by the engine"""


# ========== Graph6 / generation ==========

class Graph6Error(DomcheckError):
    """Invalid graph6 record"""


class MalformedHeader(Graph6Error):
    pass


class TruncatedBody(Graph6Error):
    pass


class OutOfRangeByte(Graph6Error):
    pass


class InfeasibleParameters(DomcheckError):
    pass


class RetryLimitExceeded(DomcheckError):
    pass


# ========== Structural preconditions ==========

class EmptyEdgeSet(DomcheckError):
    pass


class CapExceeded(DomcheckError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"graph has {n} vertices, solver cap is {cap}")
        self.n = n
        self.cap = cap


class NotRegular(DomcheckError):
    pass


class NotMaximal(DomcheckError):
    pass


class NotCubic(DomcheckError):
    pass


class NotConnected(DomcheckError):
    pass


class NotClawFree(DomcheckError):
    pass


class VertexMatched(DomcheckError):
    pass


class ConfigError(DomcheckError):
    pass


# ========== Proof-level failures ==========

class PropertyThreeViolation(DomcheckError):
    """A vertex next to a triple about to be fixed has correlated or fixed neighbors"""

    def __init__(self, message: str, vertex: int, graph6: str = ""):
        super().__init__(message)
        self.vertex = vertex
        self.graph6 = graph6


class CertificateViolation(DomcheckError):
    """A per-instance bound inequality failed"""

    def __init__(self, name: str, lhs: Any, rhs: Any, graph6: str = ""):
        super().__init__(f"certificate check {name} failed: {lhs} > {rhs} on {graph6 or '<graph>'}")
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.graph6 = graph6


class StructureViolation(DomcheckError):
    def __init__(self, message: str, vertex: Optional[int] = None):
        super().__init__(message)
        self.vertex = vertex


class NoImprovement(DomcheckError):
    pass


class NoImprovingMove(DomcheckError):
    """Local search got stuck with a non-empty uncovered set"""

    def __init__(self, message: str, state: Optional[dict] = None):
        super().__init__(message)
        self.state = state or {}
