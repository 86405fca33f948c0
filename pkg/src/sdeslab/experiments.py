"""Experiment runner: corpus handling, the RS-vs-GA comparison campaign
over a ladder of text sizes, and the landscape scan campaign, all emitting
CSV plus a metadata JSON describing every effective parameter.

Seeding: every random stream is derived from one base seed by hashing
(base, stream label, indices), so runs are independent, reorderable and
reproducible byte-for-byte, regardless of worker count.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

import numpy as np

from . import __version__, landscape as landscape_mod
from .ngrams import FitnessWeights, FrequencyModel, derive_model, load_english_model, make_objective
from .sdes import KEY_BITS, KEY_SPACE, get_preset
from .search import GAConfig, ga_search, random_search

PAPER_SIZES = (100, 200, 400, 800, 1600, 3200, 6400, 12800, 25600, 51200, 102400)

RUNS_HEADER = [
    "algorithm", "text_size", "run_index", "seed", "true_key",
    "returned_key", "returned_fitness", "matched_bits", "evaluations",
]
SUMMARY_HEADER = ["algorithm", "text_size", "mean_matched", "std_matched", "best_matched"]
FDC_HEADER = ["reference_key", "alpha", "beta", "fdc", "trap", "median_neighbor_rank"]

LANDSCAPE_WEIGHTS = (FitnessWeights(1.0, 1.0), FitnessWeights(1.0, 0.0))


def derive_seed(base: int, label: str, *parts) -> int:
    """Stable 64-bit seed for the stream (label, *parts) under a base seed."""
    payload = ":".join([str(base), label, *map(str, parts)]).encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def packaged_corpus_path() -> str:
    return str(resources.files("sdeslab") / "data" / "corpus.txt")


def load_corpus(path: str, size: int) -> bytes:
    """First ``size`` letters of the file, case-folded, non-letters dropped."""
    if size <= 0:
        raise ValueError(f"size must be positive, got {size}")
    try:
        raw = open(path, "rb").read()
    except OSError as exc:
        raise FileNotFoundError(f"corpus file not readable: {exc}") from exc
    stream = bytes(b | 0x20 for b in raw if 65 <= b <= 90 or 97 <= b <= 122)
    if len(stream) < size:
        raise ValueError(
            f"corpus has {len(stream)} letters, {size} requested: {path}"
        )
    return stream[:size]


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_path: Optional[str] = None  # None = packaged corpus
    sizes: tuple = PAPER_SIZES
    runs: int = 100
    base_seed: int = 0
    model_mode: str = "plaintext"  # "plaintext" or "language"
    weights: FitnessWeights = FitnessWeights()
    ga: GAConfig = GAConfig()
    rs_budget: int = 100
    sbox_preset: str = "paper"
    fixed_key: Optional[int] = None  # None = fresh true key per run
    reference_key_count: int = 8
    landscape_text_size: int = 800
    workers: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not self.sizes or any(s <= 0 for s in self.sizes):
            raise ValueError("sizes must be positive")
        if self.model_mode not in ("plaintext", "language"):
            raise ValueError(f"unknown model mode: {self.model_mode!r}")
        if self.fixed_key is not None and not 0 <= self.fixed_key < KEY_SPACE:
            raise ValueError("fixed_key out of range")
        if self.reference_key_count < 1 or self.landscape_text_size < 2:
            raise ValueError("bad landscape settings")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        get_preset(self.sbox_preset)  # validate early
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))

    @property
    def effective_corpus_path(self) -> str:
        return self.corpus_path or packaged_corpus_path()

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        with open(path) as fh:
            data = json.load(fh)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "sizes" in kwargs:
            kwargs["sizes"] = tuple(kwargs["sizes"])
        if "weights" in kwargs:
            kwargs["weights"] = FitnessWeights(**kwargs["weights"])
        if "ga" in kwargs:
            kwargs["ga"] = GAConfig(**kwargs["ga"])
        return cls(**kwargs)

    def describe(self) -> dict:
        """JSON-ready dict of every effective parameter."""
        return {
            "artifact_version": __version__,
            "corpus_path": self.effective_corpus_path,
            "sizes": list(self.sizes),
            "runs": self.runs,
            "base_seed": self.base_seed,
            "model_mode": self.model_mode,
            "weights": {"alpha": self.weights.alpha, "beta": self.weights.beta},
            "ga": dataclasses.asdict(self.ga),
            "rs_budget": self.rs_budget,
            "sbox_preset": self.sbox_preset,
            "fixed_key": self.fixed_key,
            "reference_key_count": self.reference_key_count,
            "landscape_text_size": self.landscape_text_size,
            "workers": self.workers,
            "operators": {
                "selection": "tournament",
                "crossover": "one-point",
                "mutation": "single-bit-flip",
                "survival": "elitist-truncation",
            },
            "rng": "numpy PCG64, seeds derived by sha256(base:label:indices)",
        }


@dataclass(frozen=True)
class SizeStats:
    algorithm: str
    text_size: int
    mean_matched: float
    std_matched: float
    best_matched: int


@dataclass
class ComparisonSummary:
    stats: list[SizeStats]
    grand_mean: dict[str, float]
    exact_hits: dict[str, int]


def _reference_model(config: ExperimentConfig, text: bytes) -> FrequencyModel:
    if config.model_mode == "plaintext":
        return derive_model(text)
    return load_english_model()


def _comparison_rows_for_size(config: ExperimentConfig, size: int) -> list[list]:
    """All per-run CSV rows for one text size (both algorithms)."""
    from .sdes import encrypt_bytes

    text = load_corpus(config.effective_corpus_path, size)
    model = _reference_model(config, text)
    sboxes = get_preset(config.sbox_preset)
    rows = []
    for run in range(config.runs):
        if config.fixed_key is not None:
            true_key = config.fixed_key
        else:
            inst_rng = np.random.default_rng(derive_seed(config.base_seed, "instance", size, run))
            true_key = int(inst_rng.integers(0, KEY_SPACE))
        ct = encrypt_bytes(text, format(true_key, f"0{KEY_BITS}b"), sboxes)
        objective = make_objective(ct, model, config.weights, sboxes)
        records = [
            random_search(objective, config.rs_budget,
                          derive_seed(config.base_seed, "rs", size, run), true_key),
            ga_search(objective, config.ga,
                      derive_seed(config.base_seed, "ga", size, run), true_key),
        ]
        for rec in records:
            rows.append([
                rec.algorithm, size, run, rec.seed,
                format(true_key, f"0{KEY_BITS}b"),
                format(rec.returned_key, f"0{KEY_BITS}b"),
                repr(rec.returned_fitness), rec.matched_bits, rec.evaluations_used,
            ])
    return rows


def summarize_rows(rows: list[list]) -> ComparisonSummary:
    """Per-(algorithm, size) stats from per-run rows; sample std, n-1 denominator."""
    by_group: dict[tuple, list[int]] = {}
    by_alg: dict[str, list[int]] = {}
    for row in rows:
        alg, size, matched = row[0], int(row[1]), int(row[7])
        by_group.setdefault((alg, size), []).append(matched)
        by_alg.setdefault(alg, []).append(matched)
    stats = []
    for (alg, size), matched in sorted(by_group.items()):
        arr = np.array(matched, dtype=float)
        std = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
        stats.append(SizeStats(alg, size, float(arr.mean()), std, int(arr.max())))
    grand = {alg: float(np.mean([s.mean_matched for s in stats if s.algorithm == alg]))
             for alg in by_alg}
    hits = {alg: sum(1 for m in v if m == KEY_BITS) for alg, v in by_alg.items()}
    return ComparisonSummary(stats, grand, hits)


def run_comparison(config: ExperimentConfig, out_dir: str) -> ComparisonSummary:
    """The full RS-vs-GA campaign; writes runs.csv, summary.csv, metadata.json.

    Rows are emitted sorted by (algorithm, text_size, run_index) whatever the
    execution order, so parallel and sequential runs produce identical files.
    """
    # fail early on the largest size rather than mid-campaign
    load_corpus(config.effective_corpus_path, max(config.sizes))

    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = pool.map(_comparison_rows_for_size,
                              [config] * len(config.sizes), config.sizes)
            rows = [row for chunk in chunks for row in chunk]
    else:
        rows = [row for size in config.sizes
                for row in _comparison_rows_for_size(config, size)]
    rows.sort(key=lambda r: (r[0], int(r[1]), int(r[2])))

    summary = summarize_rows(rows)
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "runs.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RUNS_HEADER)
        writer.writerows(rows)
    with open(os.path.join(out_dir, "summary.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for s in summary.stats:
            writer.writerow([s.algorithm, s.text_size, repr(s.mean_matched),
                             repr(s.std_matched), s.best_matched])
    _write_metadata(config, out_dir, kind="comparison", extra={
        "grand_mean": summary.grand_mean, "exact_hits": summary.exact_hits,
    })
    return summary


def reference_keys(config: ExperimentConfig) -> list[int]:
    """The campaign's reference keys, distinct, drawn from a seeded stream."""
    rng = np.random.default_rng(derive_seed(config.base_seed, "landscape-refs"))
    keys = rng.choice(KEY_SPACE, size=config.reference_key_count, replace=False)
    return [int(k) for k in keys]


def run_landscape_campaign(config: ExperimentConfig, out_dir: str) -> list[str]:
    """Scan every reference key under both weight settings; returns file names.

    Emits one scan CSV per (reference key, weights) pair plus fdc_summary.csv
    collecting the correlation and trap report of every scan.
    """
    from .sdes import encrypt_bytes

    text = load_corpus(config.effective_corpus_path, config.landscape_text_size)
    model = _reference_model(config, text)
    sboxes = get_preset(config.sbox_preset)
    os.makedirs(out_dir, exist_ok=True)
    files = []
    summary_rows = []
    for ref in reference_keys(config):
        bits = format(ref, f"0{KEY_BITS}b")
        ct = encrypt_bytes(text, bits, sboxes)
        for weights in LANDSCAPE_WEIGHTS:
            objective = make_objective(ct, model, weights, sboxes)
            scan = landscape_mod.landscape_scan(
                ref, objective, model.label, weights,
                f"corpus[:{config.landscape_text_size}]",
            )
            name = f"scan_{bits}_a{weights.alpha:g}b{weights.beta:g}.csv"
            landscape_mod.write_scan_csv(scan, os.path.join(out_dir, name))
            files.append(name)
            fdc = landscape_mod.fitness_distance_correlation(scan)
            report = landscape_mod.distance_one_trap_report(scan)
            summary_rows.append([
                bits, repr(weights.alpha), repr(weights.beta),
                "" if fdc is None else repr(fdc),
                str(report.trap).lower(), repr(report.median_neighbor_rank),
            ])
    with open(os.path.join(out_dir, "fdc_summary.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(FDC_HEADER)
        writer.writerows(summary_rows)
    _write_metadata(config, out_dir, kind="landscape", extra={
        "weight_settings": [{"alpha": w.alpha, "beta": w.beta} for w in LANDSCAPE_WEIGHTS],
        "reference_keys": [format(k, f"0{KEY_BITS}b") for k in reference_keys(config)],
    })
    return files


def _write_metadata(config: ExperimentConfig, out_dir: str, kind: str, extra: dict) -> None:
    payload = {"experiment": kind, **config.describe(), **extra}
    with open(os.path.join(out_dir, "metadata.json"), "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
