"""Benchmark instances: random DNA pairs, FASTA ingestion and instance files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from Bio.SeqIO.FastaIO import SimpleFastaParser

from mcsp.blocks import ensure_related


DNA_ALPHABET = ("A", "C", "G", "T")

LENGTH_GROUPS: Dict[str, Tuple[int, int]] = {
    "short": (100, 200),
    "medium": (201, 400),
    "long": (401, 600),
}

InstanceSource = Literal["generated", "fasta", "file"]

PathLike = Union[str, Path]


class FastaParseError(ValueError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one (X, Y) pair.

    Generated and FASTA instances pair X with a seeded shuffle of itself;
    file instances carry both strings as read from disk.
    """

    id: str
    source: InstanceSource
    length: int
    seed: int
    length_group: str = "custom"
    sequence: Optional[str] = None
    partner: Optional[str] = None

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"Instance {self.id}: length must be positive")
        if self.seed < 0:
            raise ValueError(f"Instance {self.id}: seed must be non-negative")
        if self.source in ("fasta", "file"):
            if not self.sequence:
                raise ValueError(f"Instance {self.id}: {self.source} instances need a sequence")
            if len(self.sequence) != self.length:
                raise ValueError(f"Instance {self.id}: sequence length differs from {self.length}")
        if self.source == "file":
            if self.partner is None:
                raise ValueError(f"Instance {self.id}: file instances need both strings")
            ensure_related(self.sequence or "", self.partner)


def generate_instance(spec: InstanceSpec) -> Tuple[str, str]:
    if spec.source == "file":
        return spec.sequence or "", spec.partner or ""
    rng = np.random.default_rng(spec.seed)
    if spec.source == "fasta":
        x = spec.sequence or ""
    else:
        x = "".join(rng.choice(DNA_ALPHABET, size=spec.length))
    y = "".join(rng.permutation(list(x)))
    return x, y


def _group_bounds(group: str) -> Tuple[int, int]:
    if group not in LENGTH_GROUPS:
        raise ValueError(f"Unknown length group '{group}', expected one of {sorted(LENGTH_GROUPS)}")
    return LENGTH_GROUPS[group]


def generate_instances(group: str, count: int, seed: int) -> List[InstanceSpec]:
    low, high = _group_bounds(group)
    rng = np.random.default_rng(seed)
    lengths = rng.integers(low, high + 1, size=count)
    seeds = rng.integers(0, 2**63 - 1, size=count)
    return [
        InstanceSpec(
            id=f"{group}-{index + 1:02d}",
            source="generated",
            length=int(length),
            seed=int(instance_seed),
            length_group=group,
        )
        for index, (length, instance_seed) in enumerate(zip(lengths, seeds))
    ]


def _check_fasta_layout(path: Path) -> None:
    seen_header = False
    with path.open("r", encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith(">"):
                seen_header = True
                continue
            if not seen_header:
                raise FastaParseError("sequence data before the first '>' header", line_number)
            residues = line.replace(" ", "").replace("*", "").replace("-", "")
            if not residues.isalpha():
                raise FastaParseError(f"unexpected characters in sequence line '{line[:20]}'", line_number)


def load_fasta(
    path: PathLike,
    min_length: Optional[int] = None,
    max_length: Optional[int] = None,
    limit: Optional[int] = None,
) -> List[Tuple[str, str]]:
    """Read ``(id, SEQUENCE)`` records, keeping those inside the length range."""

    source = Path(path)
    _check_fasta_layout(source)

    records: List[Tuple[str, str]] = []
    with source.open("r", encoding="utf-8") as handle:
        for title, sequence in SimpleFastaParser(handle):
            record_id = title.split()[0] if title.split() else title
            sequence = sequence.upper()
            if min_length is not None and len(sequence) < min_length:
                continue
            if max_length is not None and len(sequence) > max_length:
                continue
            records.append((record_id, sequence))
            if limit is not None and len(records) >= limit:
                break

    if not records:
        print(f"⚠️ WARNING: no FASTA records loaded from {source}")
    return records


def fasta_instances(records: Sequence[Tuple[str, str]], seed: int) -> List[InstanceSpec]:
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2**63 - 1, size=len(records))
    return [
        InstanceSpec(
            id=record_id,
            source="fasta",
            length=len(sequence),
            seed=int(record_seed),
            sequence=sequence,
        )
        for (record_id, sequence), record_seed in zip(records, seeds)
    ]


def write_instance_file(path: PathLike, x: str, y: str) -> Path:
    ensure_related(x, y)
    target = Path(path)
    target.write_text(f"{x.upper()}\n{y.upper()}\n", encoding="utf-8")
    return target


def read_instance_file(path: PathLike) -> Tuple[str, str]:
    lines = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]
    if len(lines) != 2:
        raise ValueError(f"{path}: expected two lines (X then Y), found {len(lines)}")
    x, y = lines[0].upper(), lines[1].upper()
    ensure_related(x, y)
    return x, y


def file_instance(path: PathLike) -> InstanceSpec:
    source = Path(path)
    x, y = read_instance_file(source)
    return InstanceSpec(id=source.stem, source="file", length=len(x), seed=0, sequence=x, partner=y)


__all__ = [
    "DNA_ALPHABET",
    "LENGTH_GROUPS",
    "InstanceSource",
    "FastaParseError",
    "InstanceSpec",
    "generate_instance",
    "generate_instances",
    "load_fasta",
    "fasta_instances",
    "write_instance_file",
    "read_instance_file",
    "file_instance",
]
