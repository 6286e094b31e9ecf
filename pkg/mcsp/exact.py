"""Exhaustive MCSP oracle for tiny instances.

X is consumed left to right, so the X position is the number of Y positions
already used; the search state is therefore just the Y occupancy bitmask.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Tuple

from mcsp.blocks import X_ID, Y_ID, Block, CommonPartition, ensure_related
from mcsp.csgraph import longest_common_extensions
from mcsp.greedy import greedy_mcsp
from mcsp.mmas import Solution


DEFAULT_EXACT_LIMIT = 14


class InstanceTooLargeError(ValueError):
    """Raised when an instance exceeds the oracle's length limit."""


def _lower_bound(x: str, y: str) -> int:
    return 1 if x == y else 2


def exact_mcsp(x: str, y: str, limit: int = DEFAULT_EXACT_LIMIT) -> Tuple[int, CommonPartition]:
    """Return the optimal cost and one optimal common partition."""

    ensure_related(x, y)
    n = len(x)
    if n > limit:
        raise InstanceTooLargeError(f"instance of length {n} too large for exact (limit {limit})")

    incumbent = greedy_mcsp(x, y)
    if incumbent.cost == _lower_bound(x, y):
        return incumbent.cost, incumbent

    lce = longest_common_extensions(x, y)
    full = (1 << n) - 1
    choice: Dict[int, Tuple[int, int]] = {}

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == full:
            return 0
        pos = bin(mask).count("1")
        result = n + 1
        for length in range(n - pos, 0, -1):
            for p in range(n - length + 1):
                if lce[pos, p] < length:
                    continue
                bits = ((1 << length) - 1) << p
                if mask & bits:
                    continue
                cost = 1 + best(mask | bits)
                if cost < result:
                    result = cost
                    choice[mask] = (p, length)
                if result == 1:
                    return result
        return result

    optimum = best(0)

    pairs: List[Tuple[Block, Block]] = []
    mask, pos = 0, 0
    while mask != full:
        p, length = choice[mask]
        pairs.append((Block(X_ID, pos, pos + length - 1), Block(Y_ID, p, p + length - 1)))
        mask |= ((1 << length) - 1) << p
        pos += length

    witness = CommonPartition(
        partition_list=tuple(x_block for x_block, _ in pairs),
        mapped_list=tuple(y_block for _, y_block in pairs),
    )
    return optimum, witness


def exact_solution(x: str, y: str, limit: int = DEFAULT_EXACT_LIMIT) -> Solution:
    _, partition = exact_mcsp(x, y, limit)
    return Solution(partition)


__all__ = ["DEFAULT_EXACT_LIMIT", "InstanceTooLargeError", "exact_mcsp", "exact_solution"]
