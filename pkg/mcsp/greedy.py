"""Greedy baseline: repeatedly extract a longest common substring.

Each step works on the LCE table truncated to the unmarked runs of X and Y,
so the extracted substring never straddles an already matched position.
Ties go to the smallest X start, then the smallest Y start.
"""

from __future__ import annotations

import time
from typing import List, Tuple

import numpy as np

from mcsp.blocks import X_ID, Y_ID, Block, CommonPartition, ensure_related
from mcsp.csgraph import longest_common_extensions
from mcsp.mmas import Solution


def _free_room(marked: np.ndarray) -> np.ndarray:
    """Distance from each unmarked position to the end of its unmarked run (0 when marked)."""

    n = marked.size
    barriers = np.append(np.flatnonzero(marked), n)
    positions = np.arange(n)
    next_barrier = barriers[np.searchsorted(barriers, positions)]
    return np.where(marked, 0, next_barrier - positions)


def greedy_extractions(x: str, y: str) -> List[Tuple[Block, Block]]:
    """Matched ``(X block, Y block)`` pairs in the order they were extracted."""

    ensure_related(x, y)
    n = len(x)
    lce = longest_common_extensions(x, y)[:n, :n]
    marked_x = np.zeros(n, dtype=bool)
    marked_y = np.zeros(n, dtype=bool)
    pairs: List[Tuple[Block, Block]] = []

    while not marked_x.all():
        room_x = _free_room(marked_x)
        room_y = _free_room(marked_y)
        usable = np.minimum(lce, np.minimum(room_x[:, np.newaxis], room_y[np.newaxis, :]))
        i, p = np.unravel_index(int(np.argmax(usable)), usable.shape)
        length = int(usable[i, p])
        if length == 0:
            raise RuntimeError("Greedy extraction stalled before covering X")

        i, p = int(i), int(p)
        marked_x[i : i + length] = True
        marked_y[p : p + length] = True
        pairs.append((Block(X_ID, i, i + length - 1), Block(Y_ID, p, p + length - 1)))

    return pairs


def greedy_mcsp(x: str, y: str) -> CommonPartition:
    pairs = sorted(greedy_extractions(x, y), key=lambda pair: pair[0].i)
    return CommonPartition(
        partition_list=tuple(x_block for x_block, _ in pairs),
        mapped_list=tuple(y_block for _, y_block in pairs),
    )


def greedy_solution(x: str, y: str, verbose: bool = False) -> Solution:
    started = time.perf_counter()
    solution = Solution(greedy_mcsp(x, y))
    if verbose:
        print(f"   ✅ Greedy: cost {solution.cost} in {time.perf_counter() - started:.2f}s")
    return solution


__all__ = ["greedy_extractions", "greedy_mcsp", "greedy_solution"]
