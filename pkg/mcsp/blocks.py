"""Block algebra shared by every solver.

A block ``[id, i, j]`` is a closed interval of one of the two input strings
(``id`` 0 for X, 1 for Y).  Pairwise ``union`` merges overlapping blocks
only; ``union_into_list`` also coalesces blocks that touch end to start.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence, Tuple, Union


X_ID = 0
Y_ID = 1

ReasonCode = Literal["overlap", "gap", "substring-mismatch", "length-mismatch"]


class BlockContractError(ValueError):
    """Raised when a caller breaks a precondition of the block algebra."""


class UnrelatedStringsError(ValueError):
    """Raised when two strings are not permutations of each other."""


@dataclass(frozen=True, order=True)
class Block:
    """Closed interval ``[id, i, j]`` over X (id 0) or Y (id 1)."""

    id: int
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.id not in (X_ID, Y_ID):
            raise BlockContractError(f"Unknown string id {self.id}")
        if self.i < 0 or self.j < self.i:
            raise BlockContractError(f"Invalid block bounds [{self.id},{self.i},{self.j}]")

    @property
    def length(self) -> int:
        return self.j - self.i + 1

    def __repr__(self) -> str:
        return f"[{self.id},{self.i},{self.j}]"


class _EmptyBlock:
    """The distinguished empty block ``[]``."""

    _instance: Optional["_EmptyBlock"] = None

    def __new__(cls) -> "_EmptyBlock":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "[]"


EMPTY_BLOCK = _EmptyBlock()

BlockList = Tuple[Block, ...]


@dataclass(frozen=True)
class CommonPartition:
    """Paired blocks of X and Y; ``mapped_list[k]`` carries the text of ``partition_list[k]``."""

    partition_list: BlockList
    mapped_list: BlockList

    @property
    def cost(self) -> int:
        return len(self.partition_list)

    def substrings(self, x: str) -> Tuple[str, ...]:
        return tuple(x[block.i : block.j + 1] for block in self.partition_list)


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    reason: Optional[ReasonCode] = None

    def __bool__(self) -> bool:
        return self.valid


def related(x: str, y: str) -> bool:
    return len(x) == len(y) and Counter(x) == Counter(y)


def ensure_related(x: str, y: str) -> None:
    if not related(x, y):
        raise UnrelatedStringsError(
            f"unrelated strings: lengths {len(x)}/{len(y)} or letter counts differ"
        )


def substring(block: Block, x: str, y: str) -> str:
    source = x if block.id == X_ID else y
    return source[block.i : block.j + 1]


def _require_same_id(first: Block, second: Block) -> None:
    if first.id != second.id:
        raise BlockContractError(f"Block ids differ: {first!r} vs {second!r}")


def block_contains(outer: Block, inner: Block) -> bool:
    return outer.id == inner.id and outer.i <= inner.i and inner.j <= outer.j


def intersect(first: Block, second: Block) -> Union[Block, _EmptyBlock]:
    _require_same_id(first, second)
    if second.i > first.j or first.i > second.j:
        return EMPTY_BLOCK
    return Block(first.id, max(first.i, second.i), min(first.j, second.j))


def union(first: Block, second: Block) -> Union[Block, BlockList]:
    """Merge two overlapping blocks, otherwise return them ordered by start."""

    _require_same_id(first, second)
    if second.i < first.i:
        first, second = second, first
    if second.j <= first.j:
        return first
    if second.i <= first.j:
        return Block(first.id, first.i, second.j)
    return (first, second)


def union_into_list(blocks: Sequence[Block], block: Block) -> Union[Block, BlockList]:
    """Insert ``block`` into a sorted disjoint list, coalescing it with touching neighbours.

    The result collapses to a single block only when a merge happened and
    left one member; plain insertions keep the list form.
    """

    members = list(blocks)
    for member in members:
        _require_same_id(member, block)
        if intersect(member, block):
            raise BlockContractError(f"{block!r} overlaps existing member {member!r}")

    position = bisect_left([member.i for member in members], block.i)
    merged = block
    merged_any = False

    if position > 0 and members[position - 1].j + 1 == merged.i:
        merged = Block(merged.id, members[position - 1].i, merged.j)
        merged_any = True
        position -= 1
        del members[position]

    if position < len(members) and merged.j + 1 == members[position].i:
        merged = Block(merged.id, merged.i, members[position].j)
        merged_any = True
        del members[position]

    members.insert(position, merged)
    if merged_any and len(members) == 1:
        return members[0]
    return tuple(members)


def span_in_list(block: Block, blocks: Iterable[Block]) -> int:
    lengths = [member.length for member in blocks if block_contains(member, block)]
    if not lengths:
        raise BlockContractError(f"No member of the list contains {block!r}")
    return max(lengths)


def _partition_reason(blocks: Sequence[Block], n: int) -> Optional[ReasonCode]:
    ordered = sorted(blocks, key=lambda block: block.i)
    expected_start = 0
    for block in ordered:
        if block.i < expected_start:
            return "overlap"
        if block.i > expected_start:
            return "gap"
        expected_start = block.j + 1
    if expected_start != n:
        return "gap"
    return None


def validate_common_partition(cp: CommonPartition, x: str, y: str) -> ValidationResult:
    """Check the partition of X, the position-wise text match and the cover of Y."""

    if len(x) != len(y) or len(cp.partition_list) != len(cp.mapped_list):
        return ValidationResult(False, "length-mismatch")

    for x_block, y_block in zip(cp.partition_list, cp.mapped_list):
        if x_block.id != X_ID or y_block.id != Y_ID:
            return ValidationResult(False, "length-mismatch")
        if substring(x_block, x, y) != substring(y_block, x, y):
            return ValidationResult(False, "substring-mismatch")

    for blocks in (cp.partition_list, cp.mapped_list):
        reason = _partition_reason(blocks, len(x))
        if reason:
            return ValidationResult(False, reason)

    return ValidationResult(True)


__all__ = [
    "X_ID",
    "Y_ID",
    "ReasonCode",
    "BlockContractError",
    "UnrelatedStringsError",
    "Block",
    "BlockList",
    "EMPTY_BLOCK",
    "CommonPartition",
    "ValidationResult",
    "related",
    "ensure_related",
    "substring",
    "block_contains",
    "intersect",
    "union",
    "union_into_list",
    "span_in_list",
    "validate_common_partition",
]
