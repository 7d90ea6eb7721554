"""End-to-end summarization of one document under a :class:`RunConfig`."""

from __future__ import annotations

import dataclasses
import functools
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from sumlens import features as fsel
from sumlens.bayes import SentenceVector, Summary, build_vectors, generate_summary, select_sentences, target_count
from sumlens.document import ConceptAnnotations, Document, Lexicon, extract_concepts, load_lexicon
from sumlens.errors import EmptyFeatureSet, ParameterError
from sumlens.features import FeatureSet
from sumlens.itemsets import itemset_features

log = logging.getLogger(__name__)

CONFIG_ENV = "SUMLENS_CONFIG"
STRATEGIES = ("all", "generic", "freq_threshold", "helmholtz", "itemset")


@dataclass(frozen=True)
class RunConfig:
    strategy: str = "itemset"
    threshold_kind: str = "theta3"
    epsilon: float = -1.2
    phi: float = 0.09
    compression_rate: float = 0.3
    use_coefficients: bool = True
    redundancy_reduction: bool = True
    lexicon_path: str | None = None
    stoplist_path: str | None = None
    seed: int = 0
    fallback_all: bool = False

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ParameterError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.threshold_kind not in fsel.THRESHOLD_KINDS:
            raise ParameterError(f"threshold_kind must be one of {fsel.THRESHOLD_KINDS}")
        if not (0 < self.compression_rate < 1):
            raise ParameterError("compression_rate must be in (0, 1)")
        if not (0 < self.phi <= 1):
            raise ParameterError("phi must be in (0, 1]")

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | os.PathLike | None = None, **overrides) -> "RunConfig":
        """Defaults, then the JSON config file (``path`` or $SUMLENS_CONFIG), then overrides."""
        data: dict = {}
        path = path or os.environ.get(CONFIG_ENV)
        if path:
            data.update(json.loads(Path(path).read_text(encoding="utf-8")))
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_mapping(data)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class SummaryResult:
    document: Document
    annotations: ConceptAnnotations
    pool: ConceptAnnotations
    feature_set: FeatureSet
    vectors: tuple[SentenceVector, ...]
    summary: Summary
    text: str
    config: RunConfig
    notes: tuple[str, ...] = field(default=())

    def report(self) -> dict:
        selected = set(self.summary.selected)
        return {
            "doc_id": self.document.id,
            "config": self.config.to_dict(),
            "target_count": self.summary.target_count,
            "selected": list(self.summary.selected),
            "feature_set": self.feature_set.to_dict(),
            "sentences": [
                {
                    "index": v.sentence_index,
                    "log_odds": self.summary.log_odds.get(v.sentence_index),
                    "selected": v.sentence_index in selected,
                }
                for v in self.vectors
            ],
            "warnings": list(self.summary.warnings) + list(self.notes),
        }


def select_features(ann: ConceptAnnotations, lexicon: Lexicon, config: RunConfig) -> tuple[FeatureSet, ConceptAnnotations]:
    """The feature set for ``config.strategy`` and the annotations it was drawn from."""
    if config.strategy == "all":
        return fsel.select_all(ann), ann
    pool = fsel.filter_generic(ann, lexicon.generic_semantic_types)
    if config.strategy == "generic":
        return fsel.select_generic_filtered(ann, lexicon.generic_semantic_types), pool
    if config.strategy == "freq_threshold":
        return fsel.select_by_threshold(pool, config.threshold_kind), pool
    if config.strategy == "helmholtz":
        return fsel.meaningful_features(pool, config.epsilon), pool
    return itemset_features(ann, lexicon.generic_semantic_types, config.phi), pool


def summarize(doc: Document, lexicon: Lexicon, config: RunConfig | None = None) -> SummaryResult:
    config = config or RunConfig()
    ann = extract_concepts(doc, lexicon)
    notes = []
    try:
        fs, pool = select_features(ann, lexicon, config)
        if not fs.features:
            raise EmptyFeatureSet(f"strategy {config.strategy!r} selected no features")
    except EmptyFeatureSet as exc:
        if not config.fallback_all:
            raise
        notes.append(f"{exc}; fell back to all concepts")
        log.warning(notes[-1])
        fs, pool = fsel.select_all(ann), ann
        if not fs.features:
            raise
    vectors = build_vectors(pool, fs)
    target = target_count(config.compression_rate, len(doc))
    summary = select_sentences(vectors, target, config.use_coefficients, config.redundancy_reduction)
    text = generate_summary(summary, doc)
    return SummaryResult(doc, ann, pool, fs, tuple(vectors), summary, text, config, tuple(notes))


@functools.lru_cache(maxsize=8)
def _cached_lexicon(lexicon_path, stoplist_path) -> Lexicon:
    return load_lexicon(lexicon_path, stoplist_path)


def resolve_lexicon(config: RunConfig) -> Lexicon:
    return _cached_lexicon(config.lexicon_path, config.stoplist_path)
