"""Deterministic CSV and SVG artifact emitters.

Every emitter produces byte-identical output for identical input: no
timestamps, no environment-dependent formatting, LF line endings, reals
rendered with up to six significant digits and no trailing padding.

The SVG output is built by hand rather than through a plotting library so
its structure stays contractual: the heat-map grid holds exactly one
<rect> per year whose fill is a linear grayscale in the quantile (0 ->
lightest, 100 -> darkest), and the spectrum chart holds exactly two
<polyline> elements (count and deviation) over a decade-labelled year
axis scaled to the data extrema.
"""
from __future__ import annotations

import csv
from typing import IO, Sequence

from .errors import OutputError, UsageError
from .spectrum import Peak, RpySeries

HEATMAP_BAND_WIDTH = 50

_CELL_W = 12
_CELL_H = 18
_LABEL_H = 14
_MARGIN = 10


def fmt_real(value: float) -> str:
    """Up to 6 significant digits, no trailing zero padding ("0", "2.5")."""
    return format(value, ".6g")


def _sink_name(sink: IO[str]) -> str:
    return getattr(sink, "name", None) or repr(sink)


def _writer(sink: IO[str]):
    return csv.writer(sink, lineterminator="\n")


def _require(series: RpySeries, stage: str) -> None:
    checks = {
        "median": lambda p: p.median5 is not None,
        "quantile": lambda p: p.quantile is not None,
    }
    if not all(checks[stage](p) for p in series.points):
        raise ValueError(f"series needs the {stage} stage applied first")


def emit_spectrum_csv(series: RpySeries, sink: IO[str]) -> int:
    """Write "year,count,median5,deviation" rows; returns the data row count."""
    _require(series, "median")
    try:
        writer = _writer(sink)
        writer.writerow(["year", "count", "median5", "deviation"])
        for p in series.points:
            writer.writerow([p.year, p.count, fmt_real(p.median5), fmt_real(p.deviation)])
    except OSError as exc:
        raise OutputError(f"write failed on {_sink_name(sink)}: {exc}") from exc
    return len(series.points)


def emit_quantile_csv(series: RpySeries, sink: IO[str]) -> int:
    """Write "year,count,rank,quantile" rows; returns the data row count."""
    _require(series, "quantile")
    try:
        writer = _writer(sink)
        writer.writerow(["year", "count", "rank", "quantile"])
        for p in series.points:
            writer.writerow([p.year, p.count, fmt_real(p.rank), fmt_real(p.quantile)])
    except OSError as exc:
        raise OutputError(f"write failed on {_sink_name(sink)}: {exc}") from exc
    return len(series.points)


def emit_peaks_csv(peaks: Sequence[Peak], series: RpySeries, sink: IO[str]) -> int:
    """Write "year,count,median5,deviation" rows for the detected peaks."""
    _require(series, "median")
    try:
        writer = _writer(sink)
        writer.writerow(["year", "count", "median5", "deviation"])
        for peak in peaks:
            point = series.point(peak.year)
            writer.writerow(
                [point.year, point.count, fmt_real(point.median5), fmt_real(point.deviation)]
            )
    except OSError as exc:
        raise OutputError(f"write failed on {_sink_name(sink)}: {exc}") from exc
    return len(peaks)


def emit_top_refs_csv(peaks: Sequence[Peak], sink: IO[str]) -> int:
    """Write "year,rank,tcr,share,canonical_ref" rows, ranked within each peak."""
    rows = 0
    try:
        writer = _writer(sink)
        writer.writerow(["year", "rank", "tcr", "share", "canonical_ref"])
        for peak in peaks:
            for rank, (cluster, share) in enumerate(peak.top_clusters, start=1):
                writer.writerow(
                    [peak.year, rank, cluster.tcr, fmt_real(share), cluster.canonical.raw]
                )
                rows += 1
    except OSError as exc:
        raise OutputError(f"write failed on {_sink_name(sink)}: {exc}") from exc
    return rows


def quantile_gray(quantile: float) -> str:
    """Linear grayscale fill: quantile 0 -> lightest, 100 -> darkest."""
    level = round(255 * (1 - quantile / 100))
    level = min(255, max(0, level))
    return f"#{level:02x}{level:02x}{level:02x}"


def emit_quantile_svg(
    series: RpySeries, sink: IO[str], band_width: int = HEATMAP_BAND_WIDTH
) -> None:
    """Render the quantile heat map: one cell per year, wrapped into bands.

    Cells are laid out band_width years per row; a year label appears
    under every decade year.
    """
    _require(series, "quantile")
    if band_width < 1:
        raise UsageError("band width must be >= 1")
    n = len(series.points)
    n_rows = (n + band_width - 1) // band_width
    width = 2 * _MARGIN + min(n, band_width) * _CELL_W
    height = _MARGIN + n_rows * (_CELL_H + _LABEL_H) + _MARGIN

    cells = []
    labels = []
    for i, p in enumerate(series.points):
        row, col = divmod(i, band_width)
        x = _MARGIN + col * _CELL_W
        y = _MARGIN + row * (_CELL_H + _LABEL_H)
        cells.append(
            f'<rect x="{x}" y="{y}" width="{_CELL_W}" height="{_CELL_H}" '
            f'fill="{quantile_gray(p.quantile)}"><title>{p.year}: q={fmt_real(p.quantile)}'
            f"</title></rect>"
        )
        if p.year % 10 == 0:
            labels.append(
                f'<text x="{x}" y="{y + _CELL_H + 11}" font-size="9" '
                f'font-family="sans-serif">{p.year}</text>'
            )

    try:
        sink.write(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">\n'
        )
        for element in cells + labels:
            sink.write(element + "\n")
        sink.write("</svg>\n")
    except OSError as exc:
        raise OutputError(f"write failed on {_sink_name(sink)}: {exc}") from exc


def emit_quantile_grid(
    series: RpySeries,
    sink: IO[str],
    format: str = "csv",
    band_width: int = HEATMAP_BAND_WIDTH,
) -> None:
    """Dispatch the heat-map grid to its CSV or SVG form."""
    if format == "csv":
        emit_quantile_csv(series, sink)
    elif format == "svg":
        emit_quantile_svg(series, sink, band_width=band_width)
    else:
        raise UsageError(f"unknown grid format {format!r}; expected csv or svg")


def emit_spectrum_svg(
    series: RpySeries,
    sink: IO[str],
    year_min: int | None = None,
    year_max: int | None = None,
) -> None:
    """Render the spectrum chart: count and deviation polylines per year.

    The optional year range restricts the plot to a subrange of the
    series; an empty intersection is a usage error. The vertical scale
    spans the plotted extrema, with the zero baseline always visible.
    """
    _require(series, "median")
    lo = series.year_min if year_min is None else max(year_min, series.year_min)
    hi = series.year_max if year_max is None else min(year_max, series.year_max)
    if lo > hi:
        raise UsageError(f"empty year range [{year_min}, {year_max}] for the spectrum plot")
    points = [p for p in series.points if lo <= p.year <= hi]

    width, height = 900, 360
    left, right, top, bottom = 55, 15, 15, 35
    plot_w = width - left - right
    plot_h = height - top - bottom

    v_lo = min(0.0, min(p.deviation for p in points))
    v_hi = max(1.0, max(float(p.count) for p in points), max(p.deviation for p in points))
    span = hi - lo

    def sx(year: int) -> float:
        return left + (plot_w * (year - lo) / span if span else plot_w / 2)

    def sy(value: float) -> float:
        return top + plot_h * (v_hi - value) / (v_hi - v_lo)

    count_pts = " ".join(f"{sx(p.year):.2f},{sy(p.count):.2f}" for p in points)
    dev_pts = " ".join(f"{sx(p.year):.2f},{sy(p.deviation):.2f}" for p in points)

    decades = [p.year for p in points if p.year % 10 == 0]
    axis_y = sy(0.0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="#333"/>',
        f'<line x1="{left}" y1="{axis_y:.2f}" x2="{left + plot_w}" y2="{axis_y:.2f}" '
        f'stroke="#333"/>',
        f'<text x="{left - 6}" y="{sy(v_hi) + 4:.2f}" font-size="10" text-anchor="end" '
        f'font-family="sans-serif">{fmt_real(v_hi)}</text>',
        f'<text x="{left - 6}" y="{axis_y + 4:.2f}" font-size="10" text-anchor="end" '
        f'font-family="sans-serif">0</text>',
    ]
    for year in decades:
        x = sx(year)
        parts.append(
            f'<line x1="{x:.2f}" y1="{top + plot_h}" x2="{x:.2f}" '
            f'y2="{top + plot_h + 4}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 16}" font-size="10" '
            f'text-anchor="middle" font-family="sans-serif">{year}</text>'
        )
    parts.append(
        f'<polyline fill="none" stroke="#1a1a1a" stroke-width="1.5" points="{count_pts}"/>'
    )
    parts.append(
        f'<polyline fill="none" stroke="#888888" stroke-width="1.5" points="{dev_pts}"/>'
    )
    parts.append(
        f'<text x="{left + 8}" y="{top + 12}" font-size="10" font-family="sans-serif">'
        f"count (dark) / deviation from 5-year median (gray)</text>"
    )
    parts.append("</svg>")

    try:
        sink.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise OutputError(f"write failed on {_sink_name(sink)}: {exc}") from exc
