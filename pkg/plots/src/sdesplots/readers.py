"""Schema-checked readers for the experiment CSV files.

Two file kinds are understood: landscape scans
(reference_key,candidate_key,distance,fitness) and comparison summaries
(algorithm,text_size,mean_matched,std_matched,best_matched). Anything
else is rejected with an error naming the offending columns.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass


class SchemaError(ValueError):
    """Input file does not match the documented CSV schema."""


SCAN_COLUMNS = ("reference_key", "candidate_key", "distance", "fitness")
SUMMARY_COLUMNS = ("algorithm", "text_size", "mean_matched", "std_matched", "best_matched")


@dataclass(frozen=True)
class ScanRow:
    reference_key: str
    candidate_key: str
    distance: int
    fitness: float


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    text_size: int
    mean_matched: float
    std_matched: float
    best_matched: int


def _check_header(path, fieldnames, expected):
    got = tuple(fieldnames or ())
    if got == expected:
        return
    missing = [c for c in expected if c not in got]
    unexpected = [c for c in got if c not in expected]
    if missing or unexpected:
        raise SchemaError(
            f"{path}: bad header; missing columns {missing or 'none'}, "
            f"unexpected columns {unexpected or 'none'}"
        )
    raise SchemaError(f"{path}: columns out of order; expected {','.join(expected)}")


def _is_bits(value: str) -> bool:
    return len(value) == 10 and not set(value) - {"0", "1"}


def read_scan(path) -> list[ScanRow]:
    """Parse one landscape scan file; all 1024 rows share one reference key."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        _check_header(path, reader.fieldnames, SCAN_COLUMNS)
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                row = ScanRow(raw["reference_key"], raw["candidate_key"],
                              int(raw["distance"]), float(raw["fitness"]))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}:{lineno}: bad row: {exc}") from None
            if not _is_bits(row.reference_key) or not _is_bits(row.candidate_key):
                raise SchemaError(f"{path}:{lineno}: keys must be 10-char bit-strings")
            if not 0 <= row.distance <= 10:
                raise SchemaError(f"{path}:{lineno}: distance {row.distance} out of range")
            rows.append(row)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    if len({r.reference_key for r in rows}) != 1:
        raise SchemaError(f"{path}: mixed reference keys in one scan")
    return rows


def read_summary(path) -> list[SummaryRow]:
    """Parse a comparison summary file."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        _check_header(path, reader.fieldnames, SUMMARY_COLUMNS)
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            try:
                rows.append(SummaryRow(
                    raw["algorithm"], int(raw["text_size"]),
                    float(raw["mean_matched"]), float(raw["std_matched"]),
                    int(raw["best_matched"]),
                ))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}:{lineno}: bad row: {exc}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows
