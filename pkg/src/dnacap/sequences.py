"""FASTA ingestion: parsing, codon framing, and empirical distributions.

Real gene sequences supply the host amino-acid pmfs and synonymous-codon
usage that the rate computations in :mod:`dnacap.cdna` consume.  Parsing
is deliberately strict: sequences may only contain A/C/G/T (plus U, read
as T, and N as an explicit unknown), anything else is an error with a
line/column position.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .genetic_code import (
    AMINO_ACIDS,
    CODONS,
    STOP_CODONS,
    SYNONYM_INDICES,
    codon_index,
)

logger = logging.getLogger(__name__)

_ALLOWED = set("ACGTUN")


class FastaError(ValueError):
    """Malformed FASTA input."""


@dataclass
class RawSequence:
    header: str
    bases: str  # cleaned: uppercase A/C/G/T/N only


@dataclass
class CodonCounts:
    """Occurrence counts over the 64 codons, canonical index order."""

    counts: np.ndarray = field(default_factory=lambda: np.zeros(64, dtype=np.int64))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other: "CodonCounts") -> "CodonCounts":
        return CodonCounts(self.counts + other.counts)

    def to_json(self) -> str:
        """JSON object mapping codon string to count, canonical order."""
        return json.dumps({c: int(n) for c, n in zip(CODONS, self.counts)})

    def to_csv(self) -> str:
        lines = ["codon,count"]
        lines += [f"{c},{int(n)}" for c, n in zip(CODONS, self.counts)]
        return "\n".join(lines) + "\n"


def parse_fasta(text: str) -> list[RawSequence]:
    """Parse FASTA text into cleaned sequences.

    Headers start with '>'; sequence lines are folded, uppercased, and U
    is accepted as T.  Characters outside A/C/G/T/U/N and whitespace are
    rejected with their line and column.  A record with no sequence data
    is an error; an empty input yields an empty list.
    """
    records: list[RawSequence] = []
    header: str | None = None
    chunks: list[str] = []

    def flush(line_no):
        if header is None:
            return
        if not chunks:
            raise FastaError(f"record {header!r} has no sequence data (line {line_no})")
        records.append(RawSequence(header=header, bases="".join(chunks)))

    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(">"):
            flush(line_no)
            header = stripped[1:].strip()
            chunks = []
            continue
        if header is None:
            raise FastaError(f"sequence data before any '>' header (line {line_no})")
        cleaned = []
        for col, ch in enumerate(line, start=1):
            if ch.isspace():
                continue
            up = ch.upper()
            if up not in _ALLOWED:
                raise FastaError(
                    f"illegal character {ch!r} at line {line_no}, column {col}"
                )
            cleaned.append("T" if up == "U" else up)
        chunks.append("".join(cleaned))
    flush(line_no="end of input")
    return records


def frame_codons(seq, frame: int = 0, n_policy: str = "drop_codon") -> list[str]:
    """Group a sequence into codons for one of the three reading frames.

    Skips ``frame`` leading bases and chunks the rest into triplets; the
    1-2 trailing leftover bases are dropped (logged).  Codons containing
    N are dropped under ``n_policy="drop_codon"`` or raise under
    ``"error"``.  Fewer than three usable bases is an error.
    """
    if frame not in (0, 1, 2):
        raise ValueError(f"frame must be 0, 1 or 2, got {frame}")
    if n_policy not in ("drop_codon", "error"):
        raise ValueError(f"unknown n_policy {n_policy!r}")
    bases = seq.bases if isinstance(seq, RawSequence) else str(seq)
    usable = bases[frame:]
    if len(usable) < 3:
        raise ValueError(
            f"fewer than 3 usable bases after frame {frame} ({len(usable)} left)"
        )
    trailing = len(usable) % 3
    if trailing:
        logger.warning("dropping %d trailing base(s) beyond the last codon", trailing)
    codons = []
    dropped_n = 0
    for i in range(0, len(usable) - 2, 3):
        codon = usable[i:i + 3]
        if "N" in codon:
            if n_policy == "error":
                raise ValueError(f"codon with unknown base at offset {frame + i}: {codon}")
            dropped_n += 1
            continue
        codons.append(codon)
    if dropped_n:
        logger.warning("dropped %d codon(s) containing N", dropped_n)
    return codons


def count_codons(codons) -> CodonCounts:
    """Tally codons into a 64-bin count vector."""
    counts = np.zeros(64, dtype=np.int64)
    for codon in codons:
        counts[codon_index(codon)] += 1
    return CodonCounts(counts)


def ingest_fasta(text: str, frame: int = 0, n_policy: str = "drop_codon") -> CodonCounts:
    """Parse, frame, and count all records of a FASTA text, aggregated.

    Counting is additive, so the result does not depend on record order.
    Stop codons anywhere before a record's final codon are counted like
    any other codon but logged, since a real gene ends at its single stop.
    """
    records = parse_fasta(text)
    if not records:
        raise FastaError("no sequences found")
    total = CodonCounts()
    for record in records:
        codons = frame_codons(record, frame=frame, n_policy=n_policy)
        early_stops = sum(c in STOP_CODONS for c in codons[:-1])
        if early_stops:
            logger.warning(
                "record %r: %d stop codon(s) before the final codon", record.header,
                early_stops,
            )
        total = total + count_codons(codons)
    return total


def amino_pmf(counts: CodonCounts) -> np.ndarray:
    """Empirical amino-acid pmf: synonym-set count mass over the total."""
    if counts.total < 1:
        raise ValueError("cannot build a pmf from empty codon counts")
    mass = np.array([counts.counts[idx].sum() for idx in SYNONYM_INDICES], dtype=float)
    return mass / counts.total


def codon_usage(counts: CodonCounts, zero_policy: str = "uniform_fill") -> np.ndarray:
    """Empirical synonymous-codon usage, one pmf per synonym set.

    Returned as a length-64 vector (entry u is the usage of codon u within
    its own synonym set).  Sets with no observed codons are filled
    uniformly under ``zero_policy="uniform_fill"`` or raise under
    ``"error"``.
    """
    if zero_policy not in ("uniform_fill", "error"):
        raise ValueError(f"unknown zero_policy {zero_policy!r}")
    if counts.total < 1:
        raise ValueError("cannot build codon usage from empty codon counts")
    usage = np.zeros(64)
    for ai, idx in enumerate(SYNONYM_INDICES):
        block = counts.counts[idx].astype(float)
        total = block.sum()
        if total > 0:
            usage[idx] = block / total
        elif zero_policy == "uniform_fill":
            usage[idx] = 1.0 / len(idx)
        else:
            raise ValueError(f"no codons observed for {AMINO_ACIDS[ai]}")
    return usage


def amino_pmf_to_csv(pmf: np.ndarray) -> str:
    """CSV rendering of an amino pmf, 21 rows in canonical order."""
    lines = ["amino,probability"]
    lines += [f"{a},{p:.12g}" for a, p in zip(AMINO_ACIDS, pmf)]
    return "\n".join(lines) + "\n"
