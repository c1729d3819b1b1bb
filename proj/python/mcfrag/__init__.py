"""Python bindings for the mcfrag multi-cloud data-splitting library."""

from ._mcfrag import (
    CorpusStats,
    CspRegistry,
    Fragment,
    McfragError,
    Proxy,
    allocate,
    canonical_term,
    classify_terms,
    disclosure_risk,
    extract_terms,
    information_content,
    ingest_corpus,
    run_benchmark,
    run_cli,
    split,
    stopword_list_version,
)

__all__ = [
    "CorpusStats",
    "CspRegistry",
    "Fragment",
    "McfragError",
    "Proxy",
    "allocate",
    "canonical_term",
    "classify_terms",
    "disclosure_risk",
    "extract_terms",
    "information_content",
    "ingest_corpus",
    "run_benchmark",
    "run_cli",
    "split",
    "stopword_list_version",
]
