"""Letter/bigram frequency statistics and the key-scoring fitness function.

A candidate key is scored by decrypting the ciphertext and comparing letter
and adjacent-letter-pair percentage statistics against a reference model:
the score is ``alpha * sum|E_uni - D_uni| + beta * sum|E_bi - D_bi|`` over
percentages. Lower is better; 0 means the statistics match exactly.

Statistics are taken over the case-folded ASCII letter stream: non-letter
bytes are discarded before pairing, so pairs cross the gaps they leave.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import sdes

ALPHABET = "abcdefghijklmnopqrstuvwxyz"
_NON_LETTER = 26

_CLASSES = np.full(256, _NON_LETTER, dtype=np.uint8)
for _c in range(26):
    _CLASSES[ord("A") + _c] = _c
    _CLASSES[ord("a") + _c] = _c


class TableFormatError(ValueError):
    """A frequency-table file failed to parse or violated a model invariant."""


@dataclass(eq=False)
class TextStats:
    """Observed unigram/bigram percentages of a byte stream's letter content."""

    unigram: np.ndarray  # (26,) percentages
    bigram: np.ndarray  # (26, 26) percentages
    letter_count: int
    bigram_count: int


@dataclass(eq=False)
class FrequencyModel:
    """Reference unigram/bigram percentages (a language table or derived from a text)."""

    unigram: np.ndarray
    bigram: np.ndarray
    label: str

    def __post_init__(self):
        self.unigram = np.asarray(self.unigram, dtype=float)
        self.bigram = np.asarray(self.bigram, dtype=float)
        if self.unigram.shape != (26,) or self.bigram.shape != (26, 26):
            raise TableFormatError("model must have 26 unigram and 26x26 bigram entries")
        for name, arr in (("unigram", self.unigram), ("bigram", self.bigram)):
            if not np.all(np.isfinite(arr)) or np.any(arr < 0):
                raise TableFormatError(f"{name} percentages must be finite and non-negative")
            total = float(arr.sum())
            if total != 0.0 and abs(total - 100.0) > 1e-6:
                raise TableFormatError(f"{name} percentages sum to {total!r}, expected 100 or 0")


@dataclass(frozen=True)
class FitnessWeights:
    """Weights for the unigram and bigram terms of the score."""

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("weights must be non-negative")
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("at least one weight must be positive")


def _stats_from_letters(letters: np.ndarray) -> TextStats:
    """Percentages from a (n,) array of letter classes 0..25."""
    letter_count = int(letters.size)
    uni_counts = np.bincount(letters, minlength=26)[:26]
    if letter_count >= 2:
        pairs = letters[:-1].astype(np.int32) * 26 + letters[1:]
        bi_counts = np.bincount(pairs, minlength=676)[:676]
    else:
        bi_counts = np.zeros(676, dtype=np.int64)
    bigram_count = letter_count - 1 if letter_count >= 2 else 0
    unigram = uni_counts * (100.0 / letter_count) if letter_count else np.zeros(26)
    bigram = bi_counts * (100.0 / bigram_count) if bigram_count else np.zeros(676)
    return TextStats(unigram, bigram.reshape(26, 26), letter_count, bigram_count)


def compute_stats(text: bytes) -> TextStats:
    """Unigram/bigram percentage statistics of the ASCII letters in ``text``."""
    classes = _CLASSES[np.frombuffer(bytes(text), dtype=np.uint8)]
    return _stats_from_letters(classes[classes != _NON_LETTER])


def derive_model(text: bytes) -> FrequencyModel:
    """Reference model equal to the text's own statistics.

    Scoring a ciphertext against the model derived from its plaintext makes
    the correct key's fitness exactly 0.
    """
    stats = compute_stats(text)
    if stats.letter_count == 0:
        raise TableFormatError("cannot derive a model from a text with no letters")
    return FrequencyModel(stats.unigram, stats.bigram, "plaintext-derived")


def load_model(path) -> FrequencyModel:
    """Parse a frequency-table file into a model labelled "language".

    Format: one entry per line, ``a 8.167`` for unigrams and ``th 1.52`` for
    bigrams; missing bigrams default to 0; '#' starts a comment.
    """
    path = Path(path)
    if not path.is_file():
        raise TableFormatError(f"frequency table not found: {path}")
    unigram = np.zeros(26)
    bigram = np.zeros((26, 26))
    seen: set[str] = set()
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TableFormatError(f"{path}:{lineno}: expected '<gram> <percentage>', got {raw!r}")
        gram = parts[0].lower()
        if len(gram) not in (1, 2) or any(c not in ALPHABET for c in gram):
            raise TableFormatError(f"{path}:{lineno}: bad gram {parts[0]!r}")
        try:
            value = float(parts[1])
        except ValueError:
            raise TableFormatError(f"{path}:{lineno}: bad percentage {parts[1]!r}") from None
        if not np.isfinite(value) or value < 0:
            raise TableFormatError(f"{path}:{lineno}: percentage must be finite and non-negative")
        if gram in seen:
            raise TableFormatError(f"{path}:{lineno}: duplicate entry for {gram!r}")
        seen.add(gram)
        if len(gram) == 1:
            unigram[ALPHABET.index(gram)] = value
        else:
            bigram[ALPHABET.index(gram[0]), ALPHABET.index(gram[1])] = value
    return FrequencyModel(unigram, bigram, "language")


@functools.lru_cache(maxsize=1)
def load_english_model() -> FrequencyModel:
    """The packaged English letter/bigram table."""
    with resources.as_file(resources.files("sdeslab").joinpath("data/english_ngrams.txt")) as p:
        return load_model(p)


def score_stats(stats: TextStats, model: FrequencyModel, weights: FitnessWeights) -> float:
    """Weighted L1 distance between observed and reference percentages."""
    value = 0.0
    if weights.alpha:
        value += weights.alpha * float(np.abs(model.unigram - stats.unigram).sum())
    if weights.beta:
        value += weights.beta * float(np.abs(model.bigram - stats.bigram).sum())
    return value


def fitness(
    key,
    ciphertext: bytes,
    model: FrequencyModel,
    weights: FitnessWeights = FitnessWeights(),
    sboxes: sdes.SBoxPair = sdes.DEFAULT_SBOXES,
) -> float:
    """Score a candidate key against a ciphertext; lower is better, 0 is exact.

    ``key`` may be a 10-bit string or an integer in 0..1023.
    """
    if isinstance(key, int):
        key = format(key, f"0{sdes.KEY_BITS}b")
    stats = compute_stats(sdes.decrypt_bytes(ciphertext, key, sboxes))
    return score_stats(stats, model, weights)


@functools.lru_cache(maxsize=8)
def _letter_stream_tables(sboxes: sdes.SBoxPair) -> list[tuple[bytes, bytes]]:
    """Per-key bytes.translate tables mapping ciphertext straight to letter classes.

    Entry k is (table, delete): table sends each ciphertext byte to the
    case-folded letter class of its decryption, delete lists the bytes whose
    decryptions are not letters.
    """
    classes = _CLASSES[sdes.decryption_tables(sboxes)]
    return [
        (row.tobytes(), np.flatnonzero(row == _NON_LETTER).astype(np.uint8).tobytes())
        for row in classes
    ]


class KeyObjective:
    """Eq-style fitness closed over one ciphertext, model, and weights.

    A deterministic mapping from a key (int 0..1023) to its score; safe to
    call from parallel runs.
    """

    def __init__(
        self,
        ciphertext: bytes,
        model: FrequencyModel,
        weights: FitnessWeights = FitnessWeights(),
        sboxes: sdes.SBoxPair = sdes.DEFAULT_SBOXES,
    ):
        self.ciphertext = bytes(ciphertext)
        self.model = model
        self.weights = weights
        self.sboxes = sboxes
        self._tables = _letter_stream_tables(sboxes)

    def __call__(self, key: int) -> float:
        table, delete = self._tables[key]
        letters = self.ciphertext.translate(table, delete)
        stats = _stats_from_letters(np.frombuffer(letters, dtype=np.uint8))
        return score_stats(stats, self.model, self.weights)


def make_objective(
    ciphertext: bytes,
    model: FrequencyModel,
    weights: FitnessWeights = FitnessWeights(),
    sboxes: sdes.SBoxPair = sdes.DEFAULT_SBOXES,
) -> KeyObjective:
    return KeyObjective(ciphertext, model, weights, sboxes)
