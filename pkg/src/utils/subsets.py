"""
Bitmask helpers for exhaustive subset enumeration.
"""
from typing import FrozenSet, Iterator, List


def masks_up_to(n: int, max_size: int) -> List[int]:
    """All subsets of {0..n-1} with at most max_size elements, as bitmasks."""
    return [mask for mask in range(1 << n) if bin(mask).count("1") <= max_size]


def submasks(mask: int) -> Iterator[int]:
    """Every submask of `mask`, including `mask` itself and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def mask_to_set(mask: int) -> FrozenSet[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def mask_to_tuple(mask: int) -> tuple:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
