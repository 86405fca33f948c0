"""Fitness-landscape analysis around a reference key.

Evaluates every key in the space, groups candidates by Hamming distance
from a reference key, and summarises how (un)informative the fitness is:
a Pearson fitness-distance correlation over the non-reference keys, and a
rank report for the ten distance-1 neighbours that flags deceptive
("trap") landscapes where the immediate neighbours of the true key score
no better than average.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ngrams import FitnessWeights
from .sdes import KEY_BITS, KEY_SPACE
from .search import Objective


@dataclass(frozen=True)
class LandscapeSample:
    candidate_key: int
    distance: int
    fitness: float


@dataclass
class LandscapeScan:
    """All 1024 fitness samples around one reference key.

    Samples are ordered by (distance, candidate key). The labels record
    which model and text produced the fitness values.
    """

    reference_key: int
    samples: list[LandscapeSample]
    model_label: str
    weights: FitnessWeights
    text_label: str


def keys_at_distance(reference: int, d: int) -> list[int]:
    """All keys at exact Hamming distance ``d`` from ``reference``, ascending."""
    if not 0 <= d <= KEY_BITS:
        raise ValueError(f"distance must be in 0..{KEY_BITS}, got {d}")
    keys = []
    for positions in itertools.combinations(range(KEY_BITS), d):
        flipped = reference
        for p in positions:
            flipped ^= 1 << p
        keys.append(flipped)
    return sorted(keys)


def landscape_scan(
    reference: int,
    objective: Objective,
    model_label: str = "",
    weights: FitnessWeights = FitnessWeights(),
    text_label: str = "",
) -> LandscapeScan:
    """Evaluate all 1024 keys once, grouped by distance from ``reference``."""
    samples = []
    for d in range(KEY_BITS + 1):
        for key in keys_at_distance(reference, d):
            samples.append(LandscapeSample(key, d, objective(key)))
    return LandscapeScan(reference, samples, model_label, weights, text_label)


def fitness_distance_correlation(scan: LandscapeScan) -> Optional[float]:
    """Pearson r between distance and fitness over the 1023 non-reference keys.

    The distance-0 sample is excluded: in plaintext-derived mode its forced
    zero fitness would inject spurious positive correlation. Returns None
    when the fitness values have zero variance (correlation undefined).
    """
    included = [s for s in scan.samples if s.distance > 0]
    distance = np.array([s.distance for s in included], dtype=float)
    fitness = np.array([s.fitness for s in included], dtype=float)
    dc = distance - distance.mean()
    fc = fitness - fitness.mean()
    denom_sq = float((dc * dc).sum()) * float((fc * fc).sum())
    if denom_sq == 0.0:
        return None
    return float((dc * fc).sum() / np.sqrt(denom_sq))


def _midranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks, ascending, with ties assigned the average of their span."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    ordered = values[order]
    while i < len(values):
        j = i
        while j + 1 < len(values) and ordered[j + 1] == ordered[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


@dataclass
class TrapReport:
    """Where the ten distance-1 neighbours rank among all non-reference keys."""

    reference_key: int
    neighbor_ranks: list[float]
    median_neighbor_rank: float
    population_median_rank: float
    trap: bool


def distance_one_trap_report(scan: LandscapeScan) -> TrapReport:
    """Rank the distance-1 keys by fitness; flag a trap when their median rank
    falls beyond the population median (neighbours look no better than average).
    """
    included = [s for s in scan.samples if s.distance > 0]
    fitness = np.array([s.fitness for s in included], dtype=float)
    ranks = _midranks(fitness)
    neighbor_ranks = sorted(
        float(r) for s, r in zip(included, ranks) if s.distance == 1
    )
    median = float(np.median(neighbor_ranks))
    population_median = (len(included) + 1) / 2
    return TrapReport(
        scan.reference_key,
        neighbor_ranks,
        median,
        population_median,
        median > population_median,
    )


def write_scan_csv(scan: LandscapeScan, path) -> None:
    """Write one row per candidate: reference_key,candidate_key,distance,fitness.

    Keys are 10-char bit-strings; fitness uses repr so the value round-trips
    exactly and recomputation from the file is bit-for-bit.
    """
    ref = format(scan.reference_key, f"0{KEY_BITS}b")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["reference_key", "candidate_key", "distance", "fitness"])
        for s in scan.samples:
            writer.writerow(
                [ref, format(s.candidate_key, f"0{KEY_BITS}b"), s.distance, repr(s.fitness)]
            )


def read_scan_csv(path) -> list[LandscapeSample]:
    """Parse a scan CSV back into samples (reference key must be uniform)."""
    samples = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            samples.append(
                LandscapeSample(
                    int(row["candidate_key"], 2),
                    int(row["distance"]),
                    float(row["fitness"]),
                )
            )
    return samples
