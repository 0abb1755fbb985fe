"""Tagged-export parser tests: examples, warnings, round-trip, merging."""
import io

import pytest
from hypothesis import given, strategies as st

from rpys import (
    BiblioRecord,
    InputError,
    WarningKind,
    corpus_stats,
    load_corpus,
    parse_wos_export,
    to_export_text,
)
from oracles import cr_line_count

TWO_RECORD_EXPORT = """FN Web of Science Export
VR 1.0
PT J
UT WOS:000000000101
PY 1990
CR Alpha A, 1950, J ONE, V1, P1
   Beta B, 1960, J TWO, V2, P2
   Gamma C, 1970, J THREE, V3, P3
ER

PT J
UT WOS:000000000102
PY 1991
CR Delta D, 1955, J FOUR, V4, P4
   Epsilon E, 1965, J FIVE, V5, P5
ER
EF
"""


def parse_text(text, name="test.txt"):
    return parse_wos_export(io.StringIO(text), name)


class TestParseWosExport:
    def test_two_record_fixture(self):
        records, warnings = parse_text(TWO_RECORD_EXPORT)
        assert warnings == []
        assert [len(r.cited_refs) for r in records] == [3, 2]
        assert records[0].record_id == "WOS:000000000101"
        assert records[0].pub_year == 1990
        assert records[0].cited_refs[0] == "Alpha A, 1950, J ONE, V1, P1"

    def test_empty_stream(self):
        assert parse_text("") == ([], [])

    def test_bad_year_warns_and_leaves_year_absent(self):
        records, warnings = parse_text(
            "UT WOS:1\nPY 19XX\nCR Young T, 1805, PHILOS T R SOC LOND\nER\nEF\n"
        )
        assert len(records) == 1
        assert records[0].pub_year is None
        assert [w.kind for w in warnings] == [WarningKind.BAD_YEAR]
        assert warnings[0].line_number == 2

    def test_missing_terminator_yields_partial_record(self):
        records, warnings = parse_text("UT WOS:1\nPY 2000\nCR Young T, 1805\n")
        assert len(records) == 1
        assert records[0].cited_refs == ("Young T, 1805",)
        assert [w.kind for w in warnings] == [WarningKind.MISSING_TERMINATOR]

    def test_record_without_cr_field(self):
        records, warnings = parse_text("UT WOS:1\nPY 2000\nER\nEF\n")
        assert records[0].cited_refs == ()
        assert warnings == []

    def test_synthesized_id_for_missing_accession(self):
        records, _ = parse_text("PY 2000\nCR Young T, 1805\nER\nEF\n", name="f.txt")
        assert records[0].record_id == "f.txt:1"

    def test_crlf_line_endings(self):
        text = TWO_RECORD_EXPORT.replace("\n", "\r\n")
        records, warnings = parse_text(text)
        assert [len(r.cited_refs) for r in records] == [3, 2]
        assert warnings == []

    def test_unknown_tag_line_warns_but_parses_on(self):
        records, warnings = parse_text(
            "UT WOS:1\n&&&garbage\nCR Young T, 1805\nER\nEF\n"
        )
        assert len(records) == 1
        assert [w.kind for w in warnings] == [WarningKind.UNKNOWN_TAG]

    def test_content_after_ef_is_ignored(self):
        records, warnings = parse_text("UT WOS:1\nER\nEF\nUT WOS:2\nER\n")
        assert [r.record_id for r in records] == ["WOS:1"]
        assert warnings == []

    def test_unmodelled_tags_are_skipped_silently(self):
        records, warnings = parse_text(
            "PT J\nAU Someone\nTI A title\n   wrapped further\nUT WOS:1\nER\nEF\n"
        )
        assert records[0].record_id == "WOS:1"
        assert warnings == []


class TestConformanceSample:
    """The shipped malformed sample parses to the hand-verified record set."""

    def test_records_and_warnings(self, conformance_path):
        text = conformance_path.read_text(encoding="utf-8")
        # guard: the deliberately blank CR continuation must survive editing
        assert "\n   \n" in text
        records, warnings = parse_wos_export(
            io.StringIO(text), conformance_path.name
        )

        assert [r.record_id for r in records] == [
            "WOS:000000000001",
            f"{conformance_path.name}:2",
            "WOS:000000000003",
            "WOS:000000000004",
        ]
        assert [r.pub_year for r in records] == [1999, None, 2005, 2010]
        assert [len(r.cited_refs) for r in records] == [3, 2, 2, 1]
        assert records[2].cited_refs == (
            "Stoney G G, 1909, P ROY SOC LOND A, V82, P172",
            "Tomlinson G A, 1929, PHILOS MAG, V7, P905",
        )

        assert [(w.kind, w.line_number) for w in warnings] == [
            (WarningKind.BAD_YEAR, 14),
            (WarningKind.UNKNOWN_TAG, 22),
            (WarningKind.EMPTY_FIELD, 24),
            (WarningKind.MISSING_TERMINATOR, 32),
        ]

    def test_cr_count_matches_line_counting_oracle(self, conformance_path):
        text = conformance_path.read_text(encoding="utf-8")
        records, _ = parse_wos_export(io.StringIO(text), "sample")
        parsed_total = sum(len(r.cited_refs) for r in records)
        assert parsed_total == cr_line_count(text) == 8


class TestRoundTrip:
    def test_serialize_then_parse_is_identity(self):
        records, _ = parse_text(TWO_RECORD_EXPORT)
        again, warnings = parse_text(to_export_text(records))
        assert again == records
        assert warnings == []

    @given(
        st.lists(
            st.builds(
                BiblioRecord,
                record_id=st.text(
                    alphabet=st.characters(min_codepoint=33, max_codepoint=126),
                    min_size=1,
                    max_size=12,
                ),
                pub_year=st.one_of(st.none(), st.integers(1500, 2100)),
                cited_refs=st.lists(
                    st.text(
                        alphabet=st.characters(min_codepoint=33, max_codepoint=126),
                        min_size=1,
                        max_size=30,
                    ),
                    max_size=4,
                ).map(tuple),
                doc_type=st.one_of(st.none(), st.just("Article")),
            ),
            max_size=5,
            unique_by=lambda r: r.record_id,
        )
    )
    def test_round_trip_property(self, records):
        parsed, warnings = parse_text(to_export_text(records))
        assert parsed == list(records)
        assert warnings == []


class TestLoadCorpus:
    def test_duplicate_accession_across_files(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("UT WOS:X\nPY 2000\nCR Young T, 1805\nER\nEF\n")
        b.write_text("UT WOS:X\nPY 2001\nCR Hertz H, 1882\nER\nUT WOS:Y\nER\nEF\n")
        corpus, warnings = load_corpus([str(a), str(b)])
        assert [r.record_id for r in corpus.records] == ["WOS:X", "WOS:Y"]
        assert corpus.records[0].pub_year == 2000  # first file wins
        assert [w.kind for w in warnings] == [WarningKind.DUPLICATE_ID]

    def test_single_file_single_record(self, tmp_path):
        f = tmp_path / "one.txt"
        f.write_text("UT WOS:1\nCR Young T, 1805\nER\nEF\n")
        corpus, warnings = load_corpus([str(f)])
        assert len(corpus.records) == 1
        assert warnings == []

    def test_path_order_does_not_matter(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("UT WOS:A\nER\nEF\n")
        b.write_text("UT WOS:B\nER\nEF\n")
        forward, _ = load_corpus([str(a), str(b)])
        backward, _ = load_corpus([str(b), str(a)])
        assert forward == backward

    def test_unreadable_path_is_hard_error_naming_it(self, tmp_path):
        missing = tmp_path / "nope.txt"
        with pytest.raises(InputError, match="nope.txt"):
            load_corpus([str(missing)])

    def test_undecodable_bytes_are_hard_error(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_bytes(b"UT WOS:1\nCR \xff\xfe broken\nER\nEF\n")
        with pytest.raises(InputError, match="bad.txt"):
            load_corpus([str(f)])

    def test_utf8_bom_is_accepted(self, tmp_path):
        f = tmp_path / "bom.txt"
        f.write_bytes("UT WOS:1\nER\nEF\n".encode("utf-8-sig"))
        corpus, _ = load_corpus([str(f)])
        assert corpus.records[0].record_id == "WOS:1"


class TestCorpusStats:
    def test_empty_corpus(self, tmp_path):
        f = tmp_path / "empty.txt"
        f.write_text("")
        corpus, _ = load_corpus([str(f)])
        stats = corpus_stats(corpus)
        assert (stats.n_records, stats.n_cited_refs) == (0, 0)
        assert stats.pub_year_min is None and stats.pub_year_max is None

    def test_year_bounds_skip_missing_years(self, tmp_path):
        f = tmp_path / "c.txt"
        f.write_text(
            "UT A\nPY 1953\nER\nUT B\nER\nUT C\nPY 2014\nER\nEF\n"
        )
        corpus, _ = load_corpus([str(f)])
        stats = corpus_stats(corpus)
        assert (stats.pub_year_min, stats.pub_year_max) == (1953, 2014)

    def test_cr_total_matches_oracle_on_fixture(self, golden_path):
        corpus, _ = load_corpus([golden_path])
        stats = corpus_stats(corpus)
        assert stats.n_cited_refs == cr_line_count(
            golden_path.read_text(encoding="utf-8")
        )
