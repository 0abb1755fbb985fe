"""End-to-end analysis: ingest -> parse -> cluster -> spectrum -> artifacts.

run_pipeline drives every stage over a set of export files and writes the
full report bundle into an output directory:

    spectrum.csv    year,count,median5,deviation for every year in range
    quantiles.csv   year,count,rank,quantile
    peaks.csv       the detected peak years
    top_refs.csv    the top cited works under each peak, with shares
    spectrum.svg    deterministic spectrum chart
    heatmap.svg     deterministic quantile grid
    spectrum.png    matplotlib rendering of the spectrum (optional)
    heatmap.png     matplotlib rendering of the heat map (optional)
    manifest.json   config echo, corpus stats, warning count, version

Artifacts are byte-identical across runs on identical input. A failing
stage raises with the stage name and removes everything already written,
so a directory never holds a partial bundle.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .cluster import ClusterConfig, RefCluster, cluster_refs
from .errors import OutputError, RpysError
from .refs import CitedRef, extract_valid_rpy, parse_cited_ref
from .spectrum import (
    AnalysisConfig,
    Peak,
    RpySeries,
    count_by_rpy,
    detect_peaks,
    hazen_quantiles,
    median_deviation,
    populate_peaks,
)
from .wos import Corpus, CorpusStats, corpus_stats, load_corpus
from . import emit

# Display range used when no explicit range is given and no reference
# carries a usable publication year.
FALLBACK_YEAR_MIN = 1801
FALLBACK_YEAR_MAX = 2014


@dataclass(frozen=True)
class ReportBundle:
    out_dir: Path
    spectrum_csv: Path
    quantiles_csv: Path
    peaks_csv: Path
    top_refs_csv: Path
    spectrum_svg: Path
    heatmap_svg: Path
    manifest: Path
    stats: CorpusStats
    spectrum_png: Path | None = None
    heatmap_png: Path | None = None


@dataclass(frozen=True)
class AnalysisResult:
    """In-memory results backing a bundle; useful for library callers."""

    corpus: Corpus
    stats: CorpusStats
    warning_count: int
    series: RpySeries
    clusters: list[RefCluster]
    peaks: list[Peak]
    analysis: AnalysisConfig
    cluster_config: ClusterConfig


def aggregate_refs(corpus: Corpus) -> list[tuple[CitedRef, int]]:
    """Parse every cited-reference line, merging identical raw strings.

    Identical raw strings are parsed once and carry their occurrence
    count; output is ordered by raw string for determinism.
    """
    tally: Counter[str] = Counter()
    for record in corpus.records:
        tally.update(record.cited_refs)
    return [(parse_cited_ref(raw), count) for raw, count in sorted(tally.items())]


def resolve_year_range(
    refs: Sequence[tuple[CitedRef, int]],
    year_min: int | None,
    year_max: int | None,
) -> tuple[int, int]:
    """Explicit bounds win; otherwise the data extent; otherwise the fallback."""
    if year_min is None or year_max is None:
        years = [ref.rpy for ref, _ in refs if ref.rpy is not None]
        lo = year_min if year_min is not None else (min(years) if years else FALLBACK_YEAR_MIN)
        hi = year_max if year_max is not None else (max(years) if years else FALLBACK_YEAR_MAX)
    else:
        lo, hi = year_min, year_max
    return lo, hi


def analyze(
    refs: Sequence[tuple[CitedRef, int]],
    analysis: AnalysisConfig,
    cluster_config: ClusterConfig,
) -> tuple[RpySeries, list[RefCluster], list[Peak]]:
    """Run the computational stages over aggregated (ref, count) entries."""
    in_range = [
        (ref, count)
        for ref, count in refs
        if extract_valid_rpy(ref, analysis.year_min, analysis.year_max) is not None
    ]

    series = count_by_rpy(
        ((ref.rpy, count) for ref, count in in_range),
        analysis.year_min,
        analysis.year_max,
    )
    series = hazen_quantiles(median_deviation(series))

    clusters = cluster_refs(in_range, cluster_config)
    peaks = populate_peaks(detect_peaks(series, analysis), clusters, analysis.top_k_refs)
    return series, clusters, peaks


def run_analysis(
    input_paths: Sequence[str | Path],
    *,
    year_min: int | None = None,
    year_max: int | None = None,
    threshold: float = 0.75,
    peak_min_deviation: float = 10.0,
    peak_top_n: int | None = None,
    top_k_refs: int = 3,
) -> AnalysisResult:
    """Load files and compute series, clusters, and peaks (no artifacts)."""
    corpus, warnings = _stage("ingest", load_corpus, input_paths)
    refs = aggregate_refs(corpus)
    lo, hi = resolve_year_range(refs, year_min, year_max)
    analysis = AnalysisConfig(
        year_min=lo,
        year_max=hi,
        peak_min_deviation=peak_min_deviation,
        peak_top_n=peak_top_n,
        top_k_refs=top_k_refs,
    )
    cluster_config = ClusterConfig(threshold=threshold)
    series, clusters, peaks = _stage("analyze", analyze, refs, analysis, cluster_config)
    return AnalysisResult(
        corpus=corpus,
        stats=corpus_stats(corpus),
        warning_count=len(warnings),
        series=series,
        clusters=clusters,
        peaks=peaks,
        analysis=analysis,
        cluster_config=cluster_config,
    )


def _stage(name: str, fn, *args):
    try:
        return fn(*args)
    except RpysError as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def run_pipeline(
    input_paths: Sequence[str | Path],
    out_dir: str | Path,
    *,
    year_min: int | None = None,
    year_max: int | None = None,
    threshold: float = 0.75,
    peak_min_deviation: float = 10.0,
    peak_top_n: int | None = None,
    top_k_refs: int = 3,
    heatmap_band: int = emit.HEATMAP_BAND_WIDTH,
    figures: bool = True,
) -> ReportBundle:
    """Execute the full pipeline and write the report bundle.

    Returns the bundle manifest; raises InputError/OutputError (with a
    stage-named message) after removing any partially written artifacts.
    """
    result = run_analysis(
        input_paths,
        year_min=year_min,
        year_max=year_max,
        threshold=threshold,
        peak_min_deviation=peak_min_deviation,
        peak_top_n=peak_top_n,
        top_k_refs=top_k_refs,
    )

    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"report: cannot create output directory {out}: {exc}") from exc

    written: list[Path] = []

    def emit_text(name: str, render) -> Path:
        path = out / name
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                render(fh)
        except OSError as exc:
            raise OutputError(f"report: cannot write {path}: {exc}") from exc
        written.append(path)
        return path

    series, peaks = result.series, result.peaks
    try:
        spectrum_csv = emit_text("spectrum.csv", lambda fh: emit.emit_spectrum_csv(series, fh))
        quantiles_csv = emit_text("quantiles.csv", lambda fh: emit.emit_quantile_csv(series, fh))
        peaks_csv = emit_text("peaks.csv", lambda fh: emit.emit_peaks_csv(peaks, series, fh))
        top_refs_csv = emit_text("top_refs.csv", lambda fh: emit.emit_top_refs_csv(peaks, fh))
        spectrum_svg = emit_text("spectrum.svg", lambda fh: emit.emit_spectrum_svg(series, fh))
        heatmap_svg = emit_text(
            "heatmap.svg",
            lambda fh: emit.emit_quantile_svg(series, fh, band_width=heatmap_band),
        )

        spectrum_png = heatmap_png = None
        if figures:
            from . import figures as figs

            spectrum_png = out / "spectrum.png"
            figs.render_spectrum_png(series, spectrum_png, peaks)
            written.append(spectrum_png)
            heatmap_png = out / "heatmap.png"
            figs.render_heatmap_png(series, heatmap_png, band_width=heatmap_band)
            written.append(heatmap_png)

        manifest = emit_text(
            "manifest.json",
            lambda fh: _write_manifest(fh, result),
        )
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise

    return ReportBundle(
        out_dir=out,
        spectrum_csv=spectrum_csv,
        quantiles_csv=quantiles_csv,
        peaks_csv=peaks_csv,
        top_refs_csv=top_refs_csv,
        spectrum_svg=spectrum_svg,
        heatmap_svg=heatmap_svg,
        manifest=manifest,
        stats=result.stats,
        spectrum_png=spectrum_png,
        heatmap_png=heatmap_png,
    )


def _write_manifest(fh, result: AnalysisResult) -> None:
    analysis, cluster_config = result.analysis, result.cluster_config
    payload = {
        "config": {
            "year_min": analysis.year_min,
            "year_max": analysis.year_max,
            "peak_min_deviation": analysis.peak_min_deviation,
            "peak_top_n": analysis.peak_top_n,
            "top_k_refs": analysis.top_k_refs,
            "threshold": cluster_config.threshold,
        },
        "stats": {
            "n_records": result.stats.n_records,
            "n_cited_refs": result.stats.n_cited_refs,
            "pub_year_min": result.stats.pub_year_min,
            "pub_year_max": result.stats.pub_year_max,
        },
        "warnings": result.warning_count,
        "version": __version__,
    }
    json.dump(payload, fh, indent=2, sort_keys=True)
    fh.write("\n")
