"""Concept-based extractive summarization with a naive Bayes sentence classifier."""

from sumlens.document import (
    ConceptAnnotations,
    Document,
    Lexicon,
    Sentence,
    extract_concepts,
    frequency_table,
    load_lexicon,
    parse_document,
    read_document,
    segment_sentences,
    tokenize,
)
from sumlens.errors import (
    DocumentParseError,
    EmptyDocument,
    EmptyFeatureSet,
    NoClassifiableSentences,
    SumlensError,
)
from sumlens.pipeline import RunConfig, summarize

__version__ = "0.1.0"

__all__ = [
    "ConceptAnnotations",
    "Document",
    "DocumentParseError",
    "EmptyDocument",
    "EmptyFeatureSet",
    "Lexicon",
    "NoClassifiableSentences",
    "RunConfig",
    "Sentence",
    "SumlensError",
    "extract_concepts",
    "frequency_table",
    "load_lexicon",
    "parse_document",
    "read_document",
    "segment_sentences",
    "summarize",
    "tokenize",
]
