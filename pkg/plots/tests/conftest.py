import csv

import pytest

from sdesplots.readers import SummaryRow

REFERENCE_KEY = "1010000010"

# Eleven-size random-search summary used as a layout fixture.
REFERENCE_RS_RESULTS = (
    (100, 5.4, 2.27, 10),
    (200, 6.4, 1.57, 10),
    (400, 6.9, 1.52, 10),
    (800, 6.7, 1.49, 10),
    (1600, 7.4, 2.01, 10),
    (3200, 6.3, 1.34, 8),
    (6400, 6.9, 1.97, 10),
    (12800, 6.7, 2.0, 10),
    (25600, 5.8, 2.74, 10),
    (51200, 6.4, 2.72, 10),
    (102400, 5.2, 1.48, 7),
)


def _hamming(a: str, b: str) -> int:
    return sum(x != y for x, y in zip(a, b))


def _write_scan(path, reference, fitness):
    fitness = fitness or (lambda key, d: float(d))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["reference_key", "candidate_key", "distance", "fitness"])
        for value in range(1024):
            bits = format(value, "010b")
            d = _hamming(bits, reference)
            writer.writerow([reference, bits, d, repr(fitness(bits, d))])
    return path


def _write_summary(path, algorithms, results):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["algorithm", "text_size", "mean_matched",
                         "std_matched", "best_matched"])
        for algorithm in algorithms:
            for size, mean, std, best in results:
                writer.writerow([algorithm, size, repr(mean), repr(std), best])
    return path


@pytest.fixture
def make_scan(tmp_path):
    """Factory for full 1024-key scan files; default fitness = distance."""
    def make(name="scan_synth.csv", reference=REFERENCE_KEY, fitness=None):
        return _write_scan(tmp_path / name, reference, fitness)
    return make


@pytest.fixture
def make_summary(tmp_path):
    def make(name="summary.csv", algorithms=("rs", "ga"),
             results=REFERENCE_RS_RESULTS):
        return _write_summary(tmp_path / name, algorithms, results)
    return make


@pytest.fixture
def scan_csv(make_scan):
    return make_scan()


@pytest.fixture
def summary_csv(make_summary):
    return make_summary()


@pytest.fixture
def reference_rs_rows():
    return [SummaryRow("rs", size, mean, std, best)
            for size, mean, std, best in REFERENCE_RS_RESULTS]
