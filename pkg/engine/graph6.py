"""
graph6 codec and seeded random regular graphs.

Bit packing is networkx's (`from_graph6_bytes` / `to_graph6_bytes`). Records
are validated here first so that each way a line can be malformed maps to its
own error: bytes outside 63..126, a bad or non-minimal size prefix, and a
body that is too short or too long.
"""

import logging
from typing import BinaryIO, Iterator

import networkx as nx
import numpy as np

from .errors import (
    Graph6Error,
    InfeasibleParameters,
    MalformedHeader,
    OutOfRangeByte,
    RetryLimitExceeded,
    TruncatedBody,
)
from .graph import Graph

logger = logging.getLogger(__name__)

GRAPH6_HEADER = b">>graph6<<"
SHORT_LIMIT = 62
DEFAULT_RETRY_LIMIT = 10_000


# ========== Validation ==========

def _decode_size(data: bytes) -> tuple[int, int]:
    """(n, prefix length)"""
    if not data:
        raise MalformedHeader("empty graph6 record")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedHeader("truncated 8-byte size prefix")
        groups, start = data[2:8], 8
    else:
        if len(data) < 4:
            raise MalformedHeader("truncated 4-byte size prefix")
        groups, start = data[1:4], 4
    n = 0
    for byte in groups:
        n = (n << 6) | (byte - 63)
    if start == 4 and n <= SHORT_LIMIT:
        raise MalformedHeader(f"non-minimal size prefix for n={n}")
    return n, start


def _validate(data: bytes) -> int:
    """Vertex count of a header-free record, or the matching Graph6Error"""
    for pos, byte in enumerate(data):
        if byte < 63 or byte > 126:
            raise OutOfRangeByte(f"byte {byte} at offset {pos} outside 63..126")
    n, start = _decode_size(data)
    body = len(data) - start
    needed = (n * (n - 1) // 2 + 5) // 6
    if body < needed:
        raise TruncatedBody(f"n={n} needs {needed} body bytes, got {body}")
    if body > needed:
        raise Graph6Error(f"n={n} needs {needed} body bytes, got {body}")
    return n


# ========== Records ==========

def parse_graph6(line: bytes) -> Graph:
    """Decode one graph6 record (trailing newline and >>graph6<< header allowed)"""
    data = bytes(line).rstrip(b"\r\n")
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    n = _validate(data)
    try:
        decoded = nx.from_graph6_bytes(data)
    except (ValueError, nx.NetworkXError) as e:
        raise Graph6Error(f"networkx rejected a validated record: {e}") from e
    g = Graph.from_networkx(decoded)
    if g.n != n:
        raise Graph6Error(f"decoded {g.n} vertices, prefix says {n}")
    return g


def write_graph6(g: Graph) -> bytes:
    """Encode g without the trailing newline"""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).rstrip(b"\n")


def graph6_str(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def read_graph6_stream(stream: BinaryIO) -> Iterator[tuple[int, bytes]]:
    """Yield (line number, raw record) for every non-blank line"""
    for line_no, line in enumerate(stream, start=1):
        record = line.strip()
        if record:
            yield line_no, record


# ========== Random regular graphs ==========

def _shuffle(items: list, bitgen: np.random.PCG64) -> None:
    """Fisher-Yates driven by raw PCG64 output (stable across numpy versions)"""
    raws = bitgen.random_raw(len(items)).tolist()
    for i in range(len(items) - 1, 0, -1):
        j = (raws[i] * (i + 1)) >> 64
        items[i], items[j] = items[j], items[i]


def random_regular(n: int, delta: int, seed: int, retry_limit: int = DEFAULT_RETRY_LIMIT) -> Graph:
    """
    Pairing-model sample of a delta-regular simple graph on n vertices.

    Whole samples with a loop or a repeated edge are rejected. The stream is
    PCG64 seeded with the low 64 bits of seed, so equal arguments give equal
    graphs on every platform.
    """
    if n < 1 or delta < 0 or delta >= n or (n * delta) % 2:
        raise InfeasibleParameters(f"no simple {delta}-regular graph on {n} vertices")

    bitgen = np.random.PCG64(seed & 0xFFFF_FFFF_FFFF_FFFF)
    base = [v for v in range(n) for _ in range(delta)]

    for attempt in range(1, retry_limit + 1):
        stubs = list(base)
        _shuffle(stubs, bitgen)
        rows = [0] * n
        simple = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a == b or rows[a] >> b & 1:
                simple = False
                break
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        if simple:
            logger.debug(f"random_regular(n={n}, delta={delta}, seed={seed}): accepted attempt {attempt}")
            return Graph(n, rows)

    raise RetryLimitExceeded(f"pairing model rejected {retry_limit} samples for n={n}, delta={delta}")
