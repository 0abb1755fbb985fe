"""Cited-reference string parsing and normalization.

Raw cited-reference strings follow the comma-separated convention used by
the CR field of tagged bibliographic exports:

    Young T, 1805, PHILOS T R SOC LOND, V95, P65
    Archard J F, 1953, J APPL PHYS, V24, P981
    Bornmann L, 2010, PLOS ONE, V5, Pe13327, DOI 10.1371/journal.pone.0013327

The grammar is deliberately fixed rather than heuristic:

  * segments are split on ", ";
  * the first segment that is exactly a four-digit number in [1000, 2100]
    is the reference publication year (RPY);
  * the segment immediately before the year is the first author, the
    segment immediately after it the source title (unless it is a marker);
  * "V<digits>" marks the volume;
  * "P<token>" marks the starting page when the token begins with a digit
    or a lowercase letter, so electronic page ids such as "e13327" survive
    while single-word uppercase sources ("PHYSICA") are not mistaken for
    pages;
  * "DOI <token>" carries the DOI (stored lowercased).

Anything unrecognized is ignored; absent parts stay absent, never guessed.
Two-digit or bracketed years do not match the year rule and leave the RPY
absent. Parsing is total: every non-empty string yields a CitedRef.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

RPY_MIN = 1000
RPY_MAX = 2100

_YEAR_RE = re.compile(r"^\d{4}$")
_VOLUME_RE = re.compile(r"^[Vv](\d+)$")
_PAGE_RE = re.compile(r"^[Pp]([0-9a-z]\S*)$")
_DOI_RE = re.compile(r"^DOI\s+(\S+)$", re.IGNORECASE)
_NON_KEY_CHARS = re.compile(r"[^A-Z0-9 ]")
_WS_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class CitedRef:
    """One parsed cited reference; ``raw`` is always the original string."""

    raw: str
    first_author: str | None = None
    rpy: int | None = None
    source: str | None = None
    volume: int | None = None
    start_page: str | None = None
    doi: str | None = None

    def __post_init__(self) -> None:
        if not self.raw:
            raise ValueError("raw must be non-empty")
        if self.rpy is not None and not RPY_MIN <= self.rpy <= RPY_MAX:
            raise ValueError(f"rpy {self.rpy} outside [{RPY_MIN}, {RPY_MAX}]")
        for field in (self.first_author, self.source):
            if field is not None and field != field.strip():
                raise ValueError("author/source must carry no surrounding whitespace")


def _clean_alnum(text: str) -> str:
    """Uppercase, drop everything outside [A-Z0-9 ], collapse space runs."""
    cleaned = _NON_KEY_CHARS.sub("", text.upper())
    return _WS_RUN.sub(" ", cleaned).strip()


def parse_cited_ref(raw: str) -> CitedRef:
    """Parse one raw cited-reference string into a CitedRef.

    Total and deterministic: unparseable parts are simply absent. Raises
    ValueError only for an empty input string.
    """
    if not raw:
        raise ValueError("cited-reference string must be non-empty")

    segments = raw.split(", ")
    year_idx = None
    rpy = None
    for i, seg in enumerate(segments):
        if _YEAR_RE.match(seg) and RPY_MIN <= int(seg) <= RPY_MAX:
            year_idx = i
            rpy = int(seg)
            break

    if year_idx is None:
        return CitedRef(raw=raw, first_author=_clean_alnum(segments[0]) or None)

    author = _clean_alnum(segments[year_idx - 1]) if year_idx >= 1 else ""

    source = None
    volume = None
    start_page = None
    doi = None
    rest = segments[year_idx + 1:]
    for j, seg in enumerate(rest):
        vol_m = _VOLUME_RE.match(seg)
        if vol_m:
            if volume is None and int(vol_m.group(1)) > 0:
                volume = int(vol_m.group(1))
            continue
        page_m = _PAGE_RE.match(seg)
        if page_m:
            if start_page is None:
                start_page = page_m.group(1)
            continue
        doi_m = _DOI_RE.match(seg)
        if doi_m:
            if doi is None:
                doi = doi_m.group(1).lower()
            continue
        if j == 0:
            source = _WS_RUN.sub(" ", seg).strip() or None

    return CitedRef(
        raw=raw,
        first_author=author or None,
        rpy=rpy,
        source=source,
        volume=volume,
        start_page=start_page,
        doi=doi,
    )


def normalize_key(ref: CitedRef) -> str:
    """Build the canonical comparison key "AUTHOR|RPY|SOURCE|VVOL|PPAGE".

    Absent parts render as empty segments. Author and source are reduced
    to uppercase alphanumerics with single spaces, so punctuation-only
    spelling variants collapse onto one key. The result never contains
    lowercase letters or consecutive spaces.
    """
    parts = [
        _clean_alnum(ref.first_author) if ref.first_author else "",
        str(ref.rpy) if ref.rpy is not None else "",
        _clean_alnum(ref.source) if ref.source else "",
        f"V{ref.volume}" if ref.volume is not None else "",
        f"P{_WS_RUN.sub(' ', ref.start_page.upper()).strip()}" if ref.start_page else "",
    ]
    return "|".join(parts)


def extract_valid_rpy(ref: CitedRef, year_min: int, year_max: int) -> int | None:
    """Return the reference publication year when it falls inside the range."""
    if year_min > year_max:
        raise ValueError("year_min must not exceed year_max")
    if ref.rpy is not None and year_min <= ref.rpy <= year_max:
        return ref.rpy
    return None
