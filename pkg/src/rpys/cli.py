"""Command-line interface.

Subcommands map onto the pipeline stages so each is independently
invocable:

    rpys ingest FILES...              corpus stats as JSON on stdout
    rpys spectrum FILES...            per-year counts/median/deviation
    rpys heatmap FILES...             per-year rank/quantile grid
    rpys peaks FILES...               detected peak years
    rpys topk FILES...                most-cited works under each peak
    rpys report FILES... --out DIR    every artifact plus figures

Single-artifact commands print to stdout unless --out names a directory.
Analysis settings come from flags, or from a JSON config file given with
--config (flat keys mirroring the analysis and clustering options); flags
override file values. Exit statuses: 0 success, 1 usage error, 2 input
error, 3 output error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import IO, Sequence

from . import __version__, emit
from .errors import InputError, OutputError, UsageError
from .pipeline import run_analysis, run_pipeline
from .wos import load_corpus, corpus_stats

_CONFIG_KEYS = {
    "year_min",
    "year_max",
    "threshold",
    "peak_min_deviation",
    "peak_top_n",
    "top_k_refs",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1, not argparse's 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rpys", description="Cited-reference year spectroscopy")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("files", nargs="+", metavar="FILE", help="tagged export files")
    common.add_argument("--from", dest="year_min", type=int, metavar="YEAR",
                        help="first reference publication year (default: data extent)")
    common.add_argument("--to", dest="year_max", type=int, metavar="YEAR",
                        help="last reference publication year (default: data extent)")
    common.add_argument("--threshold", type=float, metavar="REAL",
                        help="variant-merge similarity threshold (default 0.75)")
    common.add_argument("--min-deviation", dest="peak_min_deviation", type=float,
                        metavar="REAL", help="peak floor on deviation (default 10)")
    common.add_argument("--top-n", dest="peak_top_n", type=int, metavar="N",
                        help="keep only the n largest peaks (default: all)")
    common.add_argument("--k", dest="top_k_refs", type=int, metavar="K",
                        help="cited works listed per peak (default 3)")
    common.add_argument("--out", metavar="DIR", help="write artifacts into DIR")
    common.add_argument("--config", metavar="PATH", help="JSON file with analysis settings")

    sub.add_parser("ingest", parents=[common], help="parse files and print corpus stats")
    for name, help_text in (
        ("spectrum", "emit the per-year spectrum table or chart"),
        ("heatmap", "emit the quantile grid as CSV or SVG"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--format", choices=("csv", "svg"), default="csv")
    sub.add_parser("peaks", parents=[common], help="emit the detected peak years")
    sub.add_parser("topk", parents=[common], help="emit top cited works per peak")
    report = sub.add_parser("report", parents=[common], help="write the full bundle")
    report.add_argument("--no-figures", action="store_true",
                        help="skip the PNG figure renderings")
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"config {path}: unknown keys {sorted(unknown)}")
    return data


def _settings(args: argparse.Namespace) -> dict:
    """Merge config-file values with flags; flags win."""
    merged = {
        "year_min": None,
        "year_max": None,
        "threshold": 0.75,
        "peak_min_deviation": 10.0,
        "peak_top_n": None,
        "top_k_refs": 3,
    }
    if args.config:
        merged.update(_load_config_file(args.config))
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if (
        merged["year_min"] is not None
        and merged["year_max"] is not None
        and merged["year_min"] > merged["year_max"]
    ):
        raise UsageError(
            f"empty year range: --from {merged['year_min']} exceeds --to {merged['year_max']}"
        )
    return merged


def _analyze(args: argparse.Namespace):
    settings = _settings(args)
    try:
        return run_analysis(args.files, **settings)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _open_sink(args: argparse.Namespace, filename: str):
    """File handle in --out (created on demand), else stdout."""
    if args.out is None:
        return sys.stdout, False
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        return open(out / filename, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise OutputError(f"cannot write under {out}: {exc}") from exc


def _emit_single(args: argparse.Namespace, filename: str, render) -> int:
    sink, close = _open_sink(args, filename)
    if not close:
        render(sink)
        return 0
    try:
        render(sink)
    except Exception:
        sink.close()
        (Path(args.out) / filename).unlink(missing_ok=True)
        raise
    sink.close()
    print(Path(args.out) / filename)
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    corpus, warnings = load_corpus(args.files)
    stats = corpus_stats(corpus)
    payload = {
        "files": list(corpus.provenance),
        "n_records": stats.n_records,
        "n_cited_refs": stats.n_cited_refs,
        "pub_year_min": stats.pub_year_min,
        "pub_year_max": stats.pub_year_max,
        "warnings": len(warnings),
    }
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    print()
    for warning in warnings:
        print(
            f"warning: {warning.file}:{warning.line_number}: "
            f"{warning.kind.value}: {warning.detail}",
            file=sys.stderr,
        )
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    result = _analyze(args)
    if args.format == "svg":
        return _emit_single(
            args, "spectrum.svg", lambda s: emit.emit_spectrum_svg(result.series, s)
        )
    return _emit_single(
        args, "spectrum.csv", lambda s: emit.emit_spectrum_csv(result.series, s)
    )


def _cmd_heatmap(args: argparse.Namespace) -> int:
    result = _analyze(args)
    filename = "heatmap.svg" if args.format == "svg" else "quantiles.csv"
    return _emit_single(
        args, filename, lambda s: emit.emit_quantile_grid(result.series, s, args.format)
    )


def _cmd_peaks(args: argparse.Namespace) -> int:
    result = _analyze(args)
    return _emit_single(
        args, "peaks.csv", lambda s: emit.emit_peaks_csv(result.peaks, result.series, s)
    )


def _cmd_topk(args: argparse.Namespace) -> int:
    result = _analyze(args)
    return _emit_single(
        args, "top_refs.csv", lambda s: emit.emit_top_refs_csv(result.peaks, s)
    )


def _cmd_report(args: argparse.Namespace) -> int:
    settings = _settings(args)
    out_dir = args.out or "rpys_report"
    try:
        bundle = run_pipeline(
            args.files, out_dir, figures=not args.no_figures, **settings
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for path in (
        bundle.spectrum_csv,
        bundle.quantiles_csv,
        bundle.peaks_csv,
        bundle.top_refs_csv,
        bundle.spectrum_svg,
        bundle.heatmap_svg,
        bundle.spectrum_png,
        bundle.heatmap_png,
        bundle.manifest,
    ):
        if path is not None:
            print(path)
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "spectrum": _cmd_spectrum,
    "heatmap": _cmd_heatmap,
    "peaks": _cmd_peaks,
    "topk": _cmd_topk,
    "report": _cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rpys: usage error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"rpys: input error: {exc}", file=sys.stderr)
        return 2
    except OutputError as exc:
        print(f"rpys: output error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
