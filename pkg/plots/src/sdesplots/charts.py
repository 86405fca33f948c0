"""Chart and table rendering from parsed CSV rows.

Landscape charts show the fitness of every candidate key, ordered and
grouped by Hamming distance from the reference key, one image per scan
file. The comparison renderer emits per-algorithm four-column tables
(text size, mean, standard deviation, best) as markdown and as one
side-by-side PNG.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .readers import ScanRow, SummaryRow, SchemaError, read_scan, read_summary  # noqa: E402

ALGORITHM_TITLES = {"rs": "Random search", "ga": "Genetic algorithm"}
EXPECTED_ALGORITHMS = ("rs", "ga")
TABLE_HEADER = ["Text size", "Mean matched bits", "Standard deviation", "Best matched bits"]
CHART_KINDS = ("landscape", "comparison-summary")


def scan_series(rows: list[ScanRow]):
    """Plot-ready series: x, fitness, and the distance-group boundaries.

    Samples are ordered by (distance, candidate key); boundaries[d] is the
    first x index of distance d, so the staircase of a fitness=distance
    scan is visible in the raw series.
    """
    ordered = sorted(rows, key=lambda r: (r.distance, int(r.candidate_key, 2)))
    fitness = [r.fitness for r in ordered]
    boundaries = {}
    for i, row in enumerate(ordered):
        boundaries.setdefault(row.distance, i)
    return list(range(len(ordered))), fitness, boundaries


def render_landscape(csv_paths, out_dir, fmt: str = "png") -> list[str]:
    """One chart per scan file; returns the written image paths.

    Every input is parsed before the first image is written, so a bad
    file fails the whole batch without leaving partial output behind.
    """
    if not csv_paths:
        raise ValueError("no scan files given")
    scans = [(path, read_scan(path)) for path in csv_paths]
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for path, rows in scans:
        xs, fitness, boundaries = scan_series(rows)
        reference = rows[0].reference_key

        fig, ax = plt.subplots(figsize=(9, 4))
        ax.scatter(xs, fitness, s=4, linewidths=0, color="#1f77b4")
        for distance, start in sorted(boundaries.items())[1:]:
            ax.axvline(start - 0.5, color="#cccccc", linewidth=0.6, zorder=0)
        centers = _group_centers(boundaries, len(xs))
        ax.set_xticks(centers)
        ax.set_xticklabels(sorted(boundaries))
        ax.set_xlabel("Hamming distance from the reference key")
        ax.set_ylabel("fitness")
        ax.set_title(f"Fitness landscape around key {reference}")
        fig.tight_layout()

        stem = os.path.splitext(os.path.basename(path))[0]
        out_path = os.path.join(out_dir, f"{stem}.{fmt}")
        fig.savefig(out_path, dpi=120)
        plt.close(fig)
        written.append(out_path)
    return written


def _group_centers(boundaries: dict, total: int) -> list[float]:
    ordered = sorted(boundaries.items())
    centers = []
    for (_, start), nxt in zip(ordered, ordered[1:] + [(None, total)]):
        centers.append((start + nxt[1] - 1) / 2)
    return centers


def _format_number(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".") if value != int(value) else str(int(value))


def _algorithm_order(name: str):
    known = name in EXPECTED_ALGORITHMS
    return (0, EXPECTED_ALGORITHMS.index(name)) if known else (1, name)


def comparison_tables(rows: list[SummaryRow]) -> dict[str, list[list[str]]]:
    """Per-algorithm four-column tables, sizes ascending; RS panel first."""
    tables = {}
    for algorithm in sorted({r.algorithm for r in rows}, key=_algorithm_order):
        mine = sorted((r for r in rows if r.algorithm == algorithm),
                      key=lambda r: r.text_size)
        tables[algorithm] = [
            [str(r.text_size), _format_number(r.mean_matched),
             _format_number(r.std_matched), str(r.best_matched)]
            for r in mine
        ]
    return tables


def comparison_markdown(rows: list[SummaryRow]) -> str:
    """Markdown rendering: one four-column table per algorithm."""
    parts = []
    for algorithm, body in comparison_tables(rows).items():
        title = ALGORITHM_TITLES.get(algorithm, algorithm)
        parts.append(f"## {title}\n")
        parts.append("| " + " | ".join(TABLE_HEADER) + " |")
        parts.append("|" + "---|" * len(TABLE_HEADER))
        for row in body:
            parts.append("| " + " | ".join(row) + " |")
        parts.append("")
    return "\n".join(parts)


def render_comparison(summary_csv, out_dir, fmt: str = "png") -> tuple[str, str]:
    """Write comparison.md and comparison.<fmt>; returns both paths."""
    rows = read_summary(summary_csv)
    present = {r.algorithm for r in rows}
    missing = [a for a in EXPECTED_ALGORITHMS if a not in present]
    if missing:
        raise SchemaError(
            f"{summary_csv}: no rows for algorithm {', '.join(repr(a) for a in missing)}")
    os.makedirs(out_dir, exist_ok=True)

    md_path = os.path.join(out_dir, "comparison.md")
    with open(md_path, "w") as fh:
        fh.write(comparison_markdown(rows) + "\n")

    tables = comparison_tables(rows)
    fig, axes = plt.subplots(1, len(tables), figsize=(6.5 * len(tables), 3.2))
    if len(tables) == 1:
        axes = [axes]
    for ax, (algorithm, body) in zip(axes, tables.items()):
        ax.axis("off")
        table = ax.table(cellText=body, colLabels=TABLE_HEADER, loc="center")
        table.auto_set_font_size(False)
        table.set_fontsize(8)
        table.scale(1.0, 1.2)
        ax.set_title(ALGORITHM_TITLES.get(algorithm, algorithm))
    fig.tight_layout()
    image_path = os.path.join(out_dir, f"comparison.{fmt}")
    fig.savefig(image_path, dpi=120)
    plt.close(fig)
    return md_path, image_path


@dataclass(frozen=True)
class PlotJob:
    """One batch rendering job: input CSVs, output directory, chart kind."""

    inputs: tuple = field(default_factory=tuple)
    out_dir: str = "."
    kind: str = "landscape"
    fmt: str = "png"

    def __post_init__(self):
        if self.kind not in CHART_KINDS:
            raise ValueError(f"chart kind must be one of {CHART_KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.kind == "comparison-summary" and len(self.inputs) != 1:
            raise ValueError("comparison-summary takes exactly one summary CSV")

    def render(self) -> list[str]:
        """Run the job; returns the paths written."""
        if self.kind == "landscape":
            return render_landscape(list(self.inputs), self.out_dir, fmt=self.fmt)
        md_path, image_path = render_comparison(self.inputs[0], self.out_dir, fmt=self.fmt)
        return [md_path, image_path]
