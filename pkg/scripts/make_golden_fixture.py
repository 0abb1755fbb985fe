#!/usr/bin/env python3
"""Build the golden tribology fixture corpus (tests/data/golden_tribology.txt).

The fixture is a tagged export constructed so that eleven landmark years
carry exactly known cited-reference totals, each dominated by one work
whose citations are split across spelling variants that must cluster back
together:

    1805:  23  (23 Young)      1909: 121  (102 Stoney)
    1882:  82  (78 Hertz)      1929: 163  (107 Tomlinson)
    1886:  39  (34 Reynolds)   1948: 299  ( 72 Savage)
    1893:  24  (14 Barus)      1950: 579  (233 Bowden)
    1896:  25  (21 Hertz)      1953: 968  (484 Archard)
                               1959: 792  (128 Archard)

Every other year in [1801, 1965] stays at zero, so each landmark year is
a clean local maximum of the deviation-from-median signal. The corpus
totals 3115 cited-reference lines spread over citing records published
1953-2014.

Construction is deterministic (fixed shuffle seed) and self-verifying:
the script asserts the variant keys sit within one edit of their base
(so clustering is insensitive to any threshold in [0.6, 0.95]), asserts
all distinct works in a year stay far apart, and replays the full
clustering and peak detection before writing a byte.

Run from the repository root after installing the package:

    python3 scripts/make_golden_fixture.py
"""
from __future__ import annotations

import random
import sys
from pathlib import Path

from rpys import (
    AnalysisConfig,
    ClusterConfig,
    cluster_refs,
    count_by_rpy,
    detect_peaks,
    median_deviation,
    normalize_key,
    parse_cited_ref,
    similarity,
)

OUT_PATH = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden_tribology.txt"
SHUFFLE_SEED = 2986417
REFS_PER_RECORD = 120
VARIANTS_PER_WORK = 3

# (year, year_total, top_count, base string, three variant spellings)
LANDMARKS = [
    (1805, 23, 23,
     "Young T, 1805, PHILOS T R SOC LOND, V95, P65",
     ["Young T., 1805, PHILOS T R SOC LOND, V95, P65",
      "Young T, 1805, PHILOS TR SOC LOND, V95, P65",
      "Youngs T, 1805, PHILOS T R SOC LOND, V95, P65"]),
    (1882, 82, 78,
     "Hertz H, 1882, J REINE ANGEW MATH, V92, P156",
     ["Hertz H., 1882, J REINE ANGEW MATH, V92, P156",
      "Hertz H, 1882, J REINE ANGEW MATH, V92, P157",
      "Hertz H, 1882, J REIN ANGEW MATH, V92, P156"]),
    (1886, 39, 34,
     "Reynolds O, 1886, PHILOS T R SOC LOND, V177, P157",
     ["Reynolds O., 1886, PHILOS T R SOC LOND, V177, P157",
      "Reynolds O, 1886, PHILOS T R SOC LON, V177, P157",
      "Reynolds 0, 1886, PHILOS T R SOC LOND, V177, P157"]),
    (1893, 24, 14,
     "Barus C, 1893, AM J SCI, V45, P87",
     ["Barus C., 1893, AM J SCI, V45, P87",
      "Barus C, 1893, AM J SCI, V45, P88",
      "Barus K, 1893, AM J SCI, V45, P87"]),
    (1896, 25, 21,
     "Hertz H, 1896, MISCELLANEOUS PAPERS, P146",
     ["Hertz H., 1896, MISCELLANEOUS PAPERS, P146",
      "Hertz H, 1896, MISCELANEOUS PAPERS, P146",
      "Hertz H, 1896, MISCELLANEOUS PAPER, P146"]),
    (1909, 121, 102,
     "Stoney G G, 1909, P ROY SOC LOND A, V82, P172",
     ["Stoney G. G., 1909, P ROY SOC LOND A, V82, P172",
      "Stoney GG, 1909, P ROY SOC LOND A, V82, P172",
      "Stoney G G, 1909, P ROY SOC LND A, V82, P172"]),
    (1929, 163, 107,
     "Tomlinson G A, 1929, PHILOS MAG, V7, P905",
     ["Tomlinson G. A., 1929, PHILOS MAG, V7, P905",
      "Tomlinson GA, 1929, PHILOS MAG, V7, P905",
      "Tomlinson G A, 1929, PHILO MAG, V7, P905"]),
    (1948, 299, 72,
     "Savage R H, 1948, J APPL PHYS, V19, P1",
     ["Savage R. H., 1948, J APPL PHYS, V19, P1",
      "Savage RH, 1948, J APPL PHYS, V19, P1",
      "Savage R H, 1948, J APP PHYS, V19, P1"]),
    (1950, 579, 233,
     "Bowden F P, 1950, FRICTION LUBRICATION SOLIDS",
     ["Bowden F. P., 1950, FRICTION LUBRICATION SOLIDS",
      "Bowden FP, 1950, FRICTION LUBRICATION SOLIDS",
      "Bowden F P, 1950, FRICTION LUBRICATON SOLIDS"]),
    (1953, 968, 484,
     "Archard J F, 1953, J APPL PHYS, V24, P981",
     ["Archard J. F., 1953, J APPL PHYS, V24, P981",
      "Archard JF, 1953, J APPL PHYS, V24, P981",
      "Archard J F, 1953, J APP PHYS, V24, P981"]),
    (1959, 792, 128,
     "Archard J F, 1959, WEAR, V2, P438",
     ["Archard J. F., 1959, WEAR, V2, P438",
      "Archard JF, 1959, WEAR, V2, P438",
      "Archard J F, 1959, WEAR, V2, P439"]),
]

FILLER_AUTHORS = [
    "Mercer D", "Kovacs P", "Oyelaran A", "Tsukuda M", "Brandt E",
    "Ilyin V", "Figueroa R", "Nakagawa S", "Duplessis H", "Wintergreen C",
]
FILLER_SOURCES = [
    "ANN MECH ENG", "REV IND LUBRIC", "B ACAD POLYTECH", "Z METALLKUNDE",
    "P INST CIV ENG", "T FARADAY SOC", "J FRANKLIN INST",
    "ARCH EISENHUTTENWES", "CR ACAD SCI PARIS", "PHYS Z",
]

YEAR_MIN, YEAR_MAX = 1801, 1965
PEAK_FLOOR = 10.0


def filler_refs(year: int, total: int, cap: int) -> list[tuple[str, int]]:
    """Split `total` occurrences into distinct works, each cited < cap times."""
    parts = []
    remaining = total
    while remaining:
        part = min(cap - 1, remaining)
        parts.append(part)
        remaining -= part
    assert len(parts) <= len(FILLER_AUTHORS), f"{year}: filler pool exhausted"
    return [
        (f"{FILLER_AUTHORS[i]}, {year}, {FILLER_SOURCES[i]}, V{3 + 2 * i}, P{40 + 17 * i}",
         part)
        for i, part in enumerate(parts)
    ]


def build_reference_lines() -> tuple[list[str], dict[int, list[tuple[str, int]]]]:
    """All 3115 CR lines plus, per year, the (raw, count) table per work."""
    lines: list[str] = []
    works: dict[int, list[tuple[str, int]]] = {}
    for year, year_total, top_count, base, variants in LANDMARKS:
        assert len(variants) == VARIANTS_PER_WORK
        table = [(base, top_count - VARIANTS_PER_WORK)]
        table += [(v, 1) for v in variants]
        table += filler_refs(year, year_total - top_count, top_count)
        works[year] = table
        for raw, count in table:
            lines.extend([raw] * count)
        assert sum(c for _, c in table) == year_total, year
    return lines, works


def verify_key_geometry(works: dict[int, list[tuple[str, int]]]) -> None:
    """Variants must chain to their base at 0.95; distinct works stay below 0.6."""
    for year, table in works.items():
        base_key = normalize_key(parse_cited_ref(table[0][0]))
        variant_keys = [normalize_key(parse_cited_ref(raw)) for raw, _ in table[1:1 + VARIANTS_PER_WORK]]
        for key in variant_keys:
            sim = similarity(base_key, key)
            assert sim >= 0.96, f"{year}: variant too far from base ({sim:.3f}): {key}"
        filler_keys = [normalize_key(parse_cited_ref(raw)) for raw, _ in table[1 + VARIANTS_PER_WORK:]]
        cluster_reps = [base_key] + filler_keys
        for i in range(len(cluster_reps)):
            for j in range(i + 1, len(cluster_reps)):
                sim = similarity(cluster_reps[i], cluster_reps[j])
                assert sim <= 0.55, (
                    f"{year}: works too close ({sim:.3f}): "
                    f"{cluster_reps[i]} vs {cluster_reps[j]}"
                )
        for key in variant_keys:
            for other in filler_keys:
                sim = similarity(key, other)
                assert sim <= 0.55, f"{year}: variant near a filler ({sim:.3f})"


def verify_behaviour(works: dict[int, list[tuple[str, int]]]) -> None:
    """Replay clustering and peak detection on the constructed references."""
    entries = []
    rpy_counts = []
    for table in works.values():
        for raw, count in table:
            entries.append((parse_cited_ref(raw), count))
            rpy_counts.append((parse_cited_ref(raw).rpy, count))

    for threshold in (0.6, 0.75, 0.95):
        clusters = cluster_refs(entries, ClusterConfig(threshold=threshold))
        for year, year_total, top_count, base, _ in LANDMARKS:
            in_year = [c for c in clusters if c.canonical.rpy == year]
            assert sum(c.tcr for c in in_year) == year_total, (threshold, year)
            top = max(in_year, key=lambda c: c.tcr)
            assert top.tcr == top_count, (threshold, year, top.tcr)
            assert top.canonical.raw == base, (threshold, year, top.canonical.raw)
            expected_clusters = 1 + len(works[year]) - 1 - VARIANTS_PER_WORK
            assert len(in_year) == expected_clusters, (threshold, year, len(in_year))

    series = median_deviation(count_by_rpy(rpy_counts, YEAR_MIN, YEAR_MAX))
    config = AnalysisConfig(YEAR_MIN, YEAR_MAX, peak_min_deviation=PEAK_FLOOR)
    peak_years = [p.year for p in detect_peaks(series, config)]
    assert peak_years == [y for y, *_ in LANDMARKS], peak_years


def render_corpus(lines: list[str]) -> str:
    shuffled = list(lines)
    random.Random(SHUFFLE_SEED).shuffle(shuffled)
    out = ["FN Golden tribology corpus", "VR 1.0"]
    for start in range(0, len(shuffled), REFS_PER_RECORD):
        chunk = shuffled[start:start + REFS_PER_RECORD]
        ordinal = start // REFS_PER_RECORD + 1
        out.append("PT J")
        out.append(f"UT WOS:GOLDTRIB{ordinal:04d}")
        out.append("DT Article")
        out.append(f"PY {1953 + (ordinal - 1) % 62}")
        for i, raw in enumerate(chunk):
            out.append(f"CR {raw}" if i == 0 else f"   {raw}")
        out.append("ER")
        out.append("")
    out.append("EF")
    return "\n".join(out) + "\n"


def main() -> int:
    lines, works = build_reference_lines()
    expected_total = sum(total for _, total, *_ in LANDMARKS)
    assert len(lines) == expected_total == 3115, len(lines)

    verify_key_geometry(works)
    verify_behaviour(works)

    text = render_corpus(lines)
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text(text, encoding="utf-8", newline="\n")

    print(f"wrote {OUT_PATH} ({len(lines)} cited references)")
    for year, year_total, top_count, base, _ in LANDMARKS:
        print(f"  {year}: {year_total:4d} total, top work {top_count:3d}  {base}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
