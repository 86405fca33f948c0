"""Command-line entry point: render charts from experiment CSV files."""

from __future__ import annotations

import argparse
import sys

from . import charts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdesplots",
        description="Render charts from cipher-search experiment CSV output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    landscape = sub.add_parser(
        "landscape", help="one fitness-vs-distance chart per scan CSV")
    landscape.add_argument("scans", nargs="+", metavar="SCAN_CSV",
                           help="landscape scan files")
    landscape.add_argument("--out", required=True, help="output directory")
    landscape.add_argument("--format", default="png", choices=("png", "svg"),
                           help="image format (default: png)")

    comparison = sub.add_parser(
        "comparison-summary",
        help="per-algorithm result tables as markdown and one image")
    comparison.add_argument("summary", metavar="SUMMARY_CSV",
                            help="comparison summary file")
    comparison.add_argument("--out", required=True, help="output directory")
    comparison.add_argument("--format", default="png", choices=("png", "svg"),
                            help="image format (default: png)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = args.scans if args.command == "landscape" else [args.summary]
    try:
        job = charts.PlotJob(inputs=tuple(inputs), out_dir=args.out,
                             kind=args.command, fmt=args.format)
        for path in job.render():
            print(path)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
