"""Reference publication year spectroscopy over bibliographic exports.

The package turns tagged-field export files into per-year citation
spectra: it parses citing records and their cited-reference strings,
aggregates spelling variants of the same cited work, computes per-year
counts with 5-year median deviations and quantiles, detects peak years,
and reports the most-cited works underlying each peak.
"""

__version__ = "0.1.0"

from .cluster import (
    ClusterConfig,
    RefCluster,
    cluster_refs,
    elect_canonical,
    levenshtein,
    similarity,
)
from .emit import (
    emit_peaks_csv,
    emit_quantile_grid,
    emit_spectrum_csv,
    emit_spectrum_svg,
    emit_top_refs_csv,
)
from .errors import InputError, OutputError, RpysError, UsageError
from .pipeline import AnalysisResult, ReportBundle, aggregate_refs, run_analysis, run_pipeline
from .refs import CitedRef, extract_valid_rpy, normalize_key, parse_cited_ref
from .spectrum import (
    AnalysisConfig,
    Peak,
    RpyPoint,
    RpySeries,
    count_by_rpy,
    detect_peaks,
    hazen_quantiles,
    median_deviation,
    populate_peaks,
    top_refs_for_year,
)
from .wos import (
    BiblioRecord,
    Corpus,
    CorpusStats,
    ParseWarning,
    WarningKind,
    corpus_stats,
    load_corpus,
    parse_wos_export,
    to_export_text,
)

__all__ = [
    "__version__",
    "AnalysisConfig",
    "AnalysisResult",
    "BiblioRecord",
    "CitedRef",
    "ClusterConfig",
    "Corpus",
    "CorpusStats",
    "InputError",
    "OutputError",
    "ParseWarning",
    "Peak",
    "RefCluster",
    "ReportBundle",
    "RpyPoint",
    "RpySeries",
    "RpysError",
    "UsageError",
    "WarningKind",
    "aggregate_refs",
    "cluster_refs",
    "corpus_stats",
    "count_by_rpy",
    "detect_peaks",
    "elect_canonical",
    "emit_peaks_csv",
    "emit_quantile_grid",
    "emit_spectrum_csv",
    "emit_spectrum_svg",
    "emit_top_refs_csv",
    "extract_valid_rpy",
    "hazen_quantiles",
    "levenshtein",
    "load_corpus",
    "median_deviation",
    "normalize_key",
    "parse_cited_ref",
    "parse_wos_export",
    "populate_peaks",
    "run_analysis",
    "run_pipeline",
    "similarity",
    "to_export_text",
    "top_refs_for_year",
]
