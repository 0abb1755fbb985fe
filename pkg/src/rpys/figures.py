"""Matplotlib renderings of the spectrum and heat map for report bundles.

These complement the hand-built SVG artifacts with conventional raster
figures. matplotlib is imported lazily and used through the object API
(no pyplot, no global state), so importing this module stays cheap and
rendering is safe from worker threads.
"""
from __future__ import annotations

from pathlib import Path

from .spectrum import Peak, RpySeries

HEATMAP_BAND_WIDTH = 50


def render_spectrum_png(
    series: RpySeries, path: str | Path, peaks: list[Peak] | None = None
) -> None:
    """Line chart of counts and deviations per year, peak years marked."""
    from matplotlib.figure import Figure

    years = [p.year for p in series.points]
    counts = [p.count for p in series.points]
    devs = [p.deviation for p in series.points]

    fig = Figure(figsize=(10, 4.2), dpi=120)
    ax = fig.subplots()
    ax.plot(years, counts, color="#1f3b57", linewidth=1.2, label="cited references")
    ax.plot(years, devs, color="#c23b22", linewidth=1.0, label="deviation from 5-year median")
    for peak in peaks or []:
        ax.axvline(peak.year, color="#c23b22", alpha=0.15, linewidth=3)
    ax.axhline(0, color="#777777", linewidth=0.6)
    ax.set_xlabel("reference publication year")
    ax.set_ylabel("cited references")
    ax.legend(loc="upper left", fontsize=8, frameon=False)
    ax.margins(x=0.01)
    fig.tight_layout()
    fig.savefig(path)


def render_heatmap_png(
    series: RpySeries, path: str | Path, band_width: int = HEATMAP_BAND_WIDTH
) -> None:
    """Quantile heat map, band_width years per row, darker = higher quantile."""
    import numpy as np
    from matplotlib.figure import Figure

    quantiles = [p.quantile for p in series.points]
    if any(q is None for q in quantiles):
        raise ValueError("series needs the quantile stage applied first")

    n = len(quantiles)
    n_rows = (n + band_width - 1) // band_width
    grid = np.full((n_rows, min(n, band_width)), np.nan)
    for i, q in enumerate(quantiles):
        grid[divmod(i, band_width)] = q

    fig = Figure(figsize=(10, 0.6 + 0.45 * n_rows), dpi=120)
    ax = fig.subplots()
    image = ax.imshow(grid, cmap="Greys", vmin=0, vmax=100, aspect="auto")
    ticks = [i for i, p in enumerate(series.points[:band_width]) if p.year % 10 == 0]
    ax.set_xticks(ticks, [series.points[i].year for i in ticks], fontsize=7)
    ax.set_yticks(
        range(n_rows),
        [series.points[r * band_width].year for r in range(n_rows)],
        fontsize=7,
    )
    ax.set_xlabel("year within band")
    fig.colorbar(image, ax=ax, label="quantile", shrink=0.8)
    fig.tight_layout()
    fig.savefig(path)
