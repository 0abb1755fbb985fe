"""Tagged-field bibliographic export parsing.

Accepted format (bit-exact):

  * the file opens with an "FN <source>" line and a "VR <version>" line;
  * a field line carries a two-character uppercase tag in columns 1-2,
    one space, then the value (e.g. "PY 1999");
  * continuation lines begin with exactly three spaces and extend the
    most recent field;
  * the CR field lists one cited reference per line -- the tag line and
    every continuation line each hold one complete reference string;
  * PY holds a 4-digit publication year, UT the accession id, DT the
    document type;
  * a record closes with a line "ER", the file with a line "EF";
  * LF and CRLF line endings are both accepted; UTF-8 with an optional
    byte-order mark is the only accepted encoding.

Malformed content degrades to warnings wherever recovery is possible:
unrecognizably shaped lines, empty field values, unparseable years, and a
missing end-of-record terminator all warn instead of aborting. Only an
unreadable path or undecodable bytes are hard errors. Tags that are well
formed but not modelled here (TI, AU, SO, ...) are skipped silently;
they are valid format, just not extracted.

Records without an accession number get a synthesized id
"<source name>:<ordinal>" so deduplication and joins stay total.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Sequence

from .errors import InputError

PUB_YEAR_MIN = 1500
PUB_YEAR_MAX = 2100

_TAG_LINE_RE = re.compile(r"^([A-Z][A-Z0-9])( (.*))?$")
_HEADER_TAGS = frozenset({"FN", "VR"})
_YEAR_RE = re.compile(r"^\d{4}$")


class WarningKind(Enum):
    UNKNOWN_TAG = "UnknownTag"
    MISSING_TERMINATOR = "MissingTerminator"
    BAD_YEAR = "BadYear"
    EMPTY_FIELD = "EmptyField"
    DUPLICATE_ID = "DuplicateId"


@dataclass(frozen=True)
class ParseWarning:
    file: str
    line_number: int
    kind: WarningKind
    detail: str

    def __post_init__(self) -> None:
        if self.line_number < 1:
            raise ValueError("line_number must be >= 1")


@dataclass(frozen=True)
class BiblioRecord:
    """One citing publication with its raw cited-reference strings."""

    record_id: str
    pub_year: int | None = None
    cited_refs: tuple[str, ...] = ()
    doc_type: str | None = None

    def __post_init__(self) -> None:
        if self.pub_year is not None and not PUB_YEAR_MIN <= self.pub_year <= PUB_YEAR_MAX:
            raise ValueError(f"pub_year {self.pub_year} outside [{PUB_YEAR_MIN}, {PUB_YEAR_MAX}]")
        if any(not ref or ref != ref.strip() for ref in self.cited_refs):
            raise ValueError("cited_refs entries must be non-empty and trimmed")


@dataclass(frozen=True)
class Corpus:
    records: tuple[BiblioRecord, ...]
    provenance: tuple[str, ...]

    def __post_init__(self) -> None:
        ids = [r.record_id for r in self.records]
        if len(ids) != len(set(ids)):
            raise ValueError("corpus records must have unique ids")


@dataclass(frozen=True)
class CorpusStats:
    n_records: int
    n_cited_refs: int
    pub_year_min: int | None
    pub_year_max: int | None


def parse_wos_export(
    stream: IO[str] | Iterable[str], source_name: str
) -> tuple[list[BiblioRecord], list[ParseWarning]]:
    """Parse one tagged export stream into records plus warnings.

    Returns one BiblioRecord per ER-terminated record, in file order. A
    record still open at end of file (or at the EF marker) is returned as
    a partial record with a MissingTerminator warning.
    """
    records: list[BiblioRecord] = []
    warnings: list[ParseWarning] = []

    fields: dict[str, list[tuple[str, int]]] = {}
    current_tag: str | None = None
    ordinal = 0
    line_no = 0

    def warn(kind: WarningKind, detail: str, at: int | None = None) -> None:
        warnings.append(ParseWarning(source_name, at or max(line_no, 1), kind, detail))

    def flush(terminated: bool) -> None:
        nonlocal fields, current_tag, ordinal
        if not fields:
            current_tag = None
            return
        ordinal += 1
        if not terminated:
            warn(WarningKind.MISSING_TERMINATOR, f"record {ordinal} has no ER line")

        record_id = None
        for value, _ in fields.get("UT", [])[:1]:
            record_id = value.strip()
        if not record_id:
            record_id = f"{source_name}:{ordinal}"

        pub_year = None
        for value, at in fields.get("PY", [])[:1]:
            year_text = value.strip()
            if _YEAR_RE.match(year_text) and PUB_YEAR_MIN <= int(year_text) <= PUB_YEAR_MAX:
                pub_year = int(year_text)
            else:
                warn(WarningKind.BAD_YEAR, f"unusable publication year {year_text!r}", at)

        cited = tuple(value.strip() for value, _ in fields.get("CR", []))

        doc_type = None
        for value, _ in fields.get("DT", [])[:1]:
            doc_type = value.strip() or None

        records.append(
            BiblioRecord(
                record_id=record_id,
                pub_year=pub_year,
                cited_refs=cited,
                doc_type=doc_type,
            )
        )
        fields = {}
        current_tag = None

    for line in stream:
        line_no += 1
        if line.endswith("\n"):
            line = line[:-1]
        if line.endswith("\r"):
            line = line[:-1]

        stripped = line.rstrip()
        if stripped == "ER":
            flush(terminated=True)
            continue
        if stripped == "EF":
            flush(terminated=False)
            return records, warnings
        if not stripped:
            continue

        if line.startswith("   "):
            if current_tag is None:
                warn(WarningKind.UNKNOWN_TAG, f"continuation outside any field: {line[:60]!r}")
            elif not line[3:].strip():
                warn(WarningKind.EMPTY_FIELD, f"empty continuation of {current_tag}")
            else:
                fields.setdefault(current_tag, []).append((line[3:], line_no))
            continue

        match = _TAG_LINE_RE.match(line)
        if match is None:
            warn(WarningKind.UNKNOWN_TAG, f"unrecognized line: {line[:60]!r}")
            continue

        tag, _, value = match.groups()
        if tag in _HEADER_TAGS and not fields:
            current_tag = None
            continue
        current_tag = tag
        if value is None or not value.strip():
            warn(WarningKind.EMPTY_FIELD, f"{tag} field has no value")
            continue
        fields.setdefault(tag, []).append((value, line_no))

    flush(terminated=False)
    return records, warnings


def load_corpus(paths: Sequence[str | Path]) -> tuple[Corpus, list[ParseWarning]]:
    """Parse and merge export files into one deduplicated corpus.

    Files are processed in lexicographic path order so the result does not
    depend on the order the paths were given in. Records repeating an
    already-seen id are dropped with a DuplicateId warning; the first
    occurrence (in processing order) wins.
    """
    ordered = sorted((str(p) for p in paths))
    warnings: list[ParseWarning] = []
    kept: list[BiblioRecord] = []
    seen: dict[str, str] = {}

    for path in ordered:
        try:
            with open(path, encoding="utf-8-sig", newline="") as fh:
                records, file_warnings = parse_wos_export(fh, path)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        except UnicodeDecodeError as exc:
            raise InputError(f"{path} is not decodable UTF-8 text: {exc}") from exc
        warnings.extend(file_warnings)
        for record in records:
            if record.record_id in seen:
                warnings.append(
                    ParseWarning(
                        file=path,
                        line_number=1,
                        kind=WarningKind.DUPLICATE_ID,
                        detail=(
                            f"record {record.record_id} already loaded"
                            f" from {seen[record.record_id]}"
                        ),
                    )
                )
                continue
            seen[record.record_id] = path
            kept.append(record)

    return Corpus(records=tuple(kept), provenance=tuple(ordered)), warnings


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Record count, total cited-reference count, and publication year bounds."""
    years = [r.pub_year for r in corpus.records if r.pub_year is not None]
    return CorpusStats(
        n_records=len(corpus.records),
        n_cited_refs=sum(len(r.cited_refs) for r in corpus.records),
        pub_year_min=min(years) if years else None,
        pub_year_max=max(years) if years else None,
    )


def to_export_text(records: Iterable[BiblioRecord], source: str = "rpys") -> str:
    """Render records back into the tagged export format.

    Inverse of parse_wos_export for the fields modelled here: parsing the
    output reproduces the records exactly.
    """
    lines = [f"FN {source}", "VR 1.0"]
    for record in records:
        lines.append(f"UT {record.record_id}")
        if record.doc_type is not None:
            lines.append(f"DT {record.doc_type}")
        if record.pub_year is not None:
            lines.append(f"PY {record.pub_year}")
        for i, ref in enumerate(record.cited_refs):
            lines.append(f"CR {ref}" if i == 0 else f"   {ref}")
        lines.append("ER")
        lines.append("")
    lines.append("EF")
    return "\n".join(lines) + "\n"
