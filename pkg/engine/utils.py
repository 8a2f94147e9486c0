"""
Bit-vector helpers.

Vertex sets are Python ints used as bit vectors inside the engine; the public
API hands out frozensets.
"""

from typing import Iterable, Iterator


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit (mask must be non-zero)"""
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))
