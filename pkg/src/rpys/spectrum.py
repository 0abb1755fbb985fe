"""Per-year citation spectra: counts, windowed medians, quantiles, peaks.

The spectrum assigns every cited reference to its reference publication
year (RPY) and derives, for each year t in the configured range:

  * count:     number of cited references with RPY = t (0 for gap years);
  * median5:   median of the counts over [t-2, t+2], truncated at the
               range edges (an even-width truncated window takes the mean
               of the two middle values);
  * deviation: count - median5, the peak-finding signal;
  * rank:      fractional rank of the count among all years, ascending,
               ties averaged;
  * quantile:  (rank - 0.5) / n * 100, so the most-cited year carries the
               highest quantile.

Peak years are strict-floor local maxima of the deviation. All stages are
pure functions over immutable series; each returns a new series.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .cluster import RefCluster
from .refs import normalize_key


@dataclass(frozen=True)
class RpyPoint:
    year: int
    count: int
    median5: float | None = None
    deviation: float | None = None
    rank: float | None = None
    quantile: float | None = None


@dataclass(frozen=True)
class RpySeries:
    year_min: int
    year_max: int
    points: tuple[RpyPoint, ...]

    def __post_init__(self) -> None:
        expected = range(self.year_min, self.year_max + 1)
        if [p.year for p in self.points] != list(expected):
            raise ValueError("points must cover every year in range, in order")

    @property
    def counts(self) -> list[int]:
        return [p.count for p in self.points]

    def point(self, year: int) -> RpyPoint:
        if not self.year_min <= year <= self.year_max:
            raise KeyError(year)
        return self.points[year - self.year_min]


@dataclass(frozen=True)
class Peak:
    year: int
    deviation: float
    count: int
    top_clusters: tuple[tuple[RefCluster, float], ...] = ()


@dataclass(frozen=True)
class AnalysisConfig:
    year_min: int
    year_max: int
    peak_min_deviation: float = 10.0
    peak_top_n: int | None = None
    top_k_refs: int = 3

    def __post_init__(self) -> None:
        if self.year_min > self.year_max:
            raise ValueError("year_min must not exceed year_max")
        if self.peak_min_deviation < 0:
            raise ValueError("peak_min_deviation must be non-negative")
        if self.peak_top_n is not None and self.peak_top_n < 1:
            raise ValueError("peak_top_n must be positive")
        if self.top_k_refs < 1:
            raise ValueError("top_k_refs must be >= 1")


def count_by_rpy(
    refs: Iterable[tuple[int, int]], year_min: int, year_max: int
) -> RpySeries:
    """Sum occurrence counts per year over (rpy, occurrence_count) pairs.

    Years inside the range with no references materialize with count 0;
    references outside the range are ignored.
    """
    if year_min > year_max:
        raise ValueError("year_min must not exceed year_max")
    totals = [0] * (year_max - year_min + 1)
    for rpy, occurrences in refs:
        if year_min <= rpy <= year_max:
            totals[rpy - year_min] += occurrences
    points = tuple(
        RpyPoint(year=year_min + i, count=c) for i, c in enumerate(totals)
    )
    return RpySeries(year_min=year_min, year_max=year_max, points=points)


def median_deviation(series: RpySeries) -> RpySeries:
    """Fill median5 and deviation from the 5-year truncated windows."""
    counts = series.counts
    n = len(counts)
    points = []
    for i, p in enumerate(series.points):
        window = counts[max(0, i - 2):min(n, i + 3)]
        m = statistics.median(window)
        points.append(replace(p, median5=m, deviation=p.count - m))
    return replace(series, points=tuple(points))


def hazen_quantiles(series: RpySeries) -> RpySeries:
    """Fill rank and quantile columns.

    Counts are ranked ascending (ties receive the average of their ranks)
    so that more-cited years land in higher quantiles.
    """
    counts = series.counts
    n = len(counts)
    order = sorted(range(n), key=lambda i: counts[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and counts[order[j + 1]] == counts[order[i]]:
            j += 1
        avg = (i + j + 2) / 2  # ranks are 1-based; average of i+1 .. j+1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    points = tuple(
        replace(p, rank=r, quantile=(r - 0.5) / n * 100)
        for p, r in zip(series.points, ranks)
    )
    return replace(series, points=points)


def detect_peaks(series: RpySeries, config: AnalysisConfig) -> list[Peak]:
    """Find peak years: local maxima of the deviation above the floor.

    A year qualifies when its deviation is positive, at least as large as
    both neighbours' (missing neighbours count as -inf), and at least
    config.peak_min_deviation. With peak_top_n set, only the top n by
    deviation survive (ties broken toward earlier years). The result has
    empty top_clusters; attach them with populate_peaks.
    """
    devs = [p.deviation for p in series.points]
    if any(d is None for d in devs):
        raise ValueError("series needs median_deviation applied first")

    candidates = []
    for i, p in enumerate(series.points):
        d = devs[i]
        left = devs[i - 1] if i > 0 else float("-inf")
        right = devs[i + 1] if i + 1 < len(devs) else float("-inf")
        if d > 0 and d >= left and d >= right and d >= config.peak_min_deviation:
            candidates.append(Peak(year=p.year, deviation=d, count=p.count))

    if config.peak_top_n is not None:
        candidates.sort(key=lambda pk: (-pk.deviation, pk.year))
        candidates = candidates[: config.peak_top_n]
    return sorted(candidates, key=lambda pk: pk.year)


def top_refs_for_year(
    clusters: Sequence[RefCluster], year: int, k: int
) -> list[tuple[RefCluster, float]]:
    """The k most-cited clusters of one year, each with its citation share.

    Clusters partition the references, so the year's total count is the
    sum of its clusters' tcr values; share = tcr / total.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    in_year = [c for c in clusters if c.canonical.rpy == year]
    total = sum(c.tcr for c in in_year)
    in_year.sort(key=lambda c: (-c.tcr, normalize_key(c.canonical)))
    return [(c, c.tcr / total if total else 0.0) for c in in_year[:k]]


def populate_peaks(
    peaks: Iterable[Peak], clusters: Sequence[RefCluster], k: int
) -> list[Peak]:
    """Attach each peak's top-k clusters and shares."""
    return [
        replace(p, top_clusters=tuple(top_refs_for_year(clusters, p.year, k)))
        for p in peaks
    ]
