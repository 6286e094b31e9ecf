"""Heuristic desirability of edge blocks.

The static term rewards long blocks; the dynamic term rewards blocks whose
tightest free match leaves little unused room around it in Y.  Both lie in
``(0, 1]`` and are blended linearly with :class:`HeuristicWeights`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np

from mcsp.blocks import Block
from mcsp.csgraph import CommonSubstringGraph, OccupancyState, min_span


DEFAULT_HEURISTIC_WEIGHTS: Dict[str, float] = {
    "a": 1.0,
    "b": 1.0,
}


@dataclass(frozen=True)
class HeuristicWeights:
    a: float = DEFAULT_HEURISTIC_WEIGHTS["a"]
    b: float = DEFAULT_HEURISTIC_WEIGHTS["b"]

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0:
            raise ValueError(f"Heuristic weights must be non-negative, got a={self.a}, b={self.b}")
        if self.a + self.b <= 0:
            raise ValueError("At least one heuristic weight must be positive")


def static_heuristic(g: CommonSubstringGraph, block: Block) -> float:
    return block.length / g.max_edge_length


def dynamic_heuristic(g: CommonSubstringGraph, occ: OccupancyState, block: Block) -> float:
    span = min_span(g, occ, block)
    return 1.0 / (abs(block.length - span) + 1)


def combined_heuristic(
    g: CommonSubstringGraph,
    occ: OccupancyState,
    block: Block,
    w: HeuristicWeights,
) -> float:
    value = w.a * static_heuristic(g, block)
    if w.b:
        value += w.b * dynamic_heuristic(g, occ, block)
    return value


def edge_heuristics(
    g: CommonSubstringGraph,
    occ: OccupancyState,
    edges: Sequence[Block],
    w: HeuristicWeights,
) -> np.ndarray:
    """Combined heuristic for the out-edges of one vertex, in the given order."""

    lengths = np.fromiter((edge.length for edge in edges), dtype=float, count=len(edges))
    values = w.a * lengths / g.max_edge_length
    if w.b:
        spans = np.fromiter(
            (min_span(g, occ, edge) for edge in edges), dtype=float, count=len(edges)
        )
        values = values + w.b / (np.abs(lengths - spans) + 1.0)
    return values


__all__ = [
    "DEFAULT_HEURISTIC_WEIGHTS",
    "HeuristicWeights",
    "static_heuristic",
    "dynamic_heuristic",
    "combined_heuristic",
    "edge_heuristics",
]
