"""Common substring graph and per-ant occupancy state.

The graph is built once per instance and shared read-only by every ant.
Vertices are the positions of X; an edge block ``[0, i, j]`` exists when
``X[i..j]`` occurs somewhere in Y.  Everything is derived from a single
longest-common-extension (LCE) table: ``lce[i, p]`` is the length of the
longest common prefix of ``X[i:]`` and ``Y[p:]``.

Instead of deleting blocks from match lists as ants consume Y, each ant
carries an :class:`OccupancyState`.  A match block is still available iff it
contains no occupied position, which is exactly what the destructive
deletion would leave behind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

import numpy as np

from mcsp.blocks import X_ID, Y_ID, Block, BlockContractError, ensure_related


def _codepoints(text: str) -> np.ndarray:
    return np.frombuffer(text.encode("utf-32-le"), dtype=np.uint32)


def longest_common_extensions(x: str, y: str) -> np.ndarray:
    """Return the ``(len(x)+1, len(y)+1)`` LCE table; the last row/column are zero."""

    xa = _codepoints(x)
    ya = _codepoints(y)
    table = np.zeros((len(xa) + 1, len(ya) + 1), dtype=np.int32)
    for i in range(len(xa) - 1, -1, -1):
        table[i, : len(ya)] = np.where(xa[i] == ya, table[i + 1, 1:] + 1, 0)
    return table


class MatchIndex:
    """Match lists keyed by substring content, filled lazily from the LCE table."""

    def __init__(self, x: str, lce: np.ndarray) -> None:
        self._x = x
        self._lce = lce
        self._starts: Dict[str, np.ndarray] = {}

    def starts(self, i: int, length: int) -> np.ndarray:
        key = self._x[i : i + length]
        cached = self._starts.get(key)
        if cached is None:
            cached = np.flatnonzero(self._lce[i, :-1] >= length)
            cached.setflags(write=False)
            self._starts[key] = cached
        return cached

    def __len__(self) -> int:
        return len(self._starts)


@dataclass(eq=False)
class CommonSubstringGraph:
    """Immutable after :func:`build_graph`; safe to share between ants."""

    x: str
    y: str
    n: int
    lce: np.ndarray
    # Longest edge length starting at each X position.
    max_len_x: np.ndarray
    # Longest prefix of Y[p:] that occurs in X.
    max_len_y: np.ndarray
    max_edge_length: int
    edge_count: int
    match_index: MatchIndex

    def is_edge(self, block: Block) -> bool:
        return (
            block.id == X_ID
            and block.j < self.n
            and block.length <= int(self.max_len_x[block.i])
        )

    def edges(self) -> Iterator[Block]:
        for i in range(self.n):
            for length in range(1, int(self.max_len_x[i]) + 1):
                yield Block(X_ID, i, i + length - 1)

    def match_starts(self, block: Block) -> np.ndarray:
        return self.match_index.starts(block.i, block.length)

    def match_list(self, block: Block) -> Tuple[Block, ...]:
        if not self.is_edge(block):
            raise BlockContractError(f"{block!r} is not an edge block")
        length = block.length
        return tuple(Block(Y_ID, int(p), int(p) + length - 1) for p in self.match_starts(block))


@dataclass(eq=False)
class OccupancyState:
    """Occupied Y positions of one ant's partial construction.

    ``run_start[k]`` / ``run_end[k]`` hold the bounds of the maximal free run
    containing ``k``; they are only meaningful for free positions.
    """

    occupied: np.ndarray
    run_start: np.ndarray
    run_end: np.ndarray
    consumed_count: int = 0

    @classmethod
    def fresh(cls, n: int) -> "OccupancyState":
        return cls(
            occupied=np.zeros(n, dtype=bool),
            run_start=np.zeros(n, dtype=np.int64),
            run_end=np.full(n, n - 1, dtype=np.int64),
        )

    def is_free(self, block: Block) -> bool:
        return not self.occupied[block.i] and int(self.run_end[block.i]) >= block.j

    def copy(self) -> "OccupancyState":
        return OccupancyState(
            occupied=self.occupied.copy(),
            run_start=self.run_start.copy(),
            run_end=self.run_end.copy(),
            consumed_count=self.consumed_count,
        )


def build_graph(x: str, y: str) -> CommonSubstringGraph:
    ensure_related(x, y)
    n = len(x)
    if n == 0:
        raise ValueError("Common substring graph needs non-empty strings")

    lce = longest_common_extensions(x, y)
    max_len_x = lce[:n, :n].max(axis=1)
    max_len_y = lce[:n, :n].max(axis=0)
    for array in (lce, max_len_x, max_len_y):
        array.setflags(write=False)

    return CommonSubstringGraph(
        x=x,
        y=y,
        n=n,
        lce=lce,
        max_len_x=max_len_x,
        max_len_y=max_len_y,
        max_edge_length=int(max_len_x.max()),
        edge_count=int(max_len_x.sum()),
        match_index=MatchIndex(x, lce),
    )


def _free_match_starts(
    g: CommonSubstringGraph, occ: OccupancyState, i: int, length: int
) -> np.ndarray:
    starts = g.match_index.starts(i, length)
    free = ~occ.occupied[starts] & (occ.run_end[starts] >= starts + length - 1)
    return starts[free]


def _wrap_limit(n: int, v: int, v_start: int) -> int:
    # Blocks never cross the end of X and never run past v_start - 1 (mod n).
    return n - v if v >= v_start else v_start - v


def available_edges(
    g: CommonSubstringGraph, occ: OccupancyState, v: int, v_start: int
) -> List[Block]:
    if occ.consumed_count >= g.n:
        raise BlockContractError("Construction already covers Y")

    limit = min(_wrap_limit(g.n, v, v_start), int(g.max_len_x[v]))
    edges: List[Block] = []
    for length in range(1, limit + 1):
        # A free match of length L+1 has a free prefix of length L.
        if _free_match_starts(g, occ, v, length).size == 0:
            break
        edges.append(Block(X_ID, v, v + length - 1))

    if not edges:
        raise RuntimeError(
            f"No available edge at vertex {v} (start {v_start}); occupancy is inconsistent"
        )
    return edges


def free_matches(g: CommonSubstringGraph, occ: OccupancyState, block: Block) -> List[Block]:
    length = block.length
    return [
        Block(Y_ID, int(p), int(p) + length - 1)
        for p in _free_match_starts(g, occ, block.i, length)
    ]


def occupy(occ: OccupancyState, match: Block) -> OccupancyState:
    if match.id != Y_ID:
        raise BlockContractError(f"Only Y blocks can be occupied, got {match!r}")
    if match.j >= occ.occupied.size or not occ.is_free(match):
        raise BlockContractError(f"{match!r} overlaps an occupied position")

    p, q = match.i, match.j
    left = int(occ.run_start[p])
    right = int(occ.run_end[p])
    occ.occupied[p : q + 1] = True
    occ.run_end[left:p] = p - 1
    occ.run_start[q + 1 : right + 1] = q + 1
    occ.consumed_count += match.length
    return occ


def _free_span_at(g: CommonSubstringGraph, occ: OccupancyState, p: int, q: int) -> int:
    left = int(occ.run_start[p])
    right = int(occ.run_end[p])
    starts = np.arange(left, p + 1)
    ends = np.minimum(starts + g.max_len_y[left : p + 1] - 1, right)
    covering = ends >= q
    return int((ends[covering] - starts[covering] + 1).max())


def free_span(g: CommonSubstringGraph, occ: OccupancyState, match: Block) -> int:
    """Longest free Y block containing ``match`` whose text also occurs in X."""

    if match.id != Y_ID or not occ.is_free(match):
        raise BlockContractError(f"{match!r} is not a free Y block")
    return _free_span_at(g, occ, match.i, match.j)


def min_span(g: CommonSubstringGraph, occ: OccupancyState, block: Block) -> int:
    length = block.length
    starts = _free_match_starts(g, occ, block.i, length)
    if starts.size == 0:
        raise BlockContractError(f"{block!r} has no free match")
    return min(_free_span_at(g, occ, int(p), int(p) + length - 1) for p in starts)


__all__ = [
    "longest_common_extensions",
    "MatchIndex",
    "CommonSubstringGraph",
    "OccupancyState",
    "build_graph",
    "available_edges",
    "free_matches",
    "occupy",
    "free_span",
    "min_span",
]
