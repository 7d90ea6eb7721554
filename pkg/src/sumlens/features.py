"""Feature selection: all concepts, generic filtering, frequency thresholds, Helmholtz meaning."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sumlens.document import ConceptAnnotations
from sumlens.errors import ParameterError

STRATEGIES = ("all", "generic_filtered", "freq_threshold", "helmholtz", "itemset")
THRESHOLD_KINDS = ("theta1", "theta2", "theta3")


@dataclass(frozen=True)
class Feature:
    id: int
    concepts: frozenset[str]
    freq: int
    score: float | None = None

    @property
    def label(self) -> str:
        return ";".join(sorted(self.concepts))


@dataclass(frozen=True)
class FeatureSet:
    strategy: str
    features: tuple[Feature, ...]
    parameters: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.features)

    def __iter__(self):
        return iter(self.features)

    @property
    def concept_sets(self) -> set[frozenset[str]]:
        return {f.concepts for f in self.features}

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "parameters": dict(self.parameters),
            "features": [
                {"id": f.id, "concepts": sorted(f.concepts), "freq": f.freq, "score": f.score}
                for f in self.features
            ],
        }


def make_feature_set(strategy, candidates: Iterable[tuple[frozenset[str], int, float | None]], **parameters) -> FeatureSet:
    """Order candidates (descending freq, then size, then sorted items) and number them."""
    ordered = sorted(candidates, key=lambda c: (-c[1], len(c[0]), sorted(c[0])))
    features = tuple(Feature(i, concepts, freq, score) for i, (concepts, freq, score) in enumerate(ordered))
    return FeatureSet(strategy, features, parameters)


def _singletons(ann: ConceptAnnotations, keep=None, scores=None):
    for cid, st in ann.stats.items():
        if keep is None or keep(cid, st):
            yield frozenset([cid]), st.sentence_count, (scores or {}).get(cid)


def select_all(ann: ConceptAnnotations) -> FeatureSet:
    return make_feature_set("all", _singletons(ann))


def filter_generic(ann: ConceptAnnotations, stoplist: Iterable[str]) -> ConceptAnnotations:
    """Drop occurrences whose semantic type is in ``stoplist``; counts are recomputed."""
    return ann.without_semantic_types(stoplist)


def select_generic_filtered(ann: ConceptAnnotations, stoplist: Iterable[str]) -> FeatureSet:
    return make_feature_set("generic_filtered", _singletons(filter_generic(ann, stoplist)))


def threshold_value(freqs: Sequence[int], kind: str = "theta3") -> float:
    """Mean, mean + 1 sd, or mean + 2 sd of ``freqs`` (population sd)."""
    if not freqs:
        raise ParameterError("threshold of an empty frequency list")
    try:
        k = THRESHOLD_KINDS.index(kind)
    except ValueError:
        raise ParameterError(f"unknown threshold kind {kind!r}") from None
    mu = statistics.fmean(freqs)
    return mu + k * statistics.pstdev(freqs, mu)


def filter_by_frequency(pool: ConceptAnnotations, threshold: float, **parameters) -> FeatureSet:
    """Keep concepts whose sentence count is at least ``threshold``."""
    return make_feature_set(
        "freq_threshold",
        _singletons(pool, keep=lambda cid, st: st.sentence_count >= threshold),
        threshold=threshold,
        **parameters,
    )


def select_by_threshold(pool: ConceptAnnotations, kind: str = "theta3") -> FeatureSet:
    freqs = [st.sentence_count for st in pool.stats.values()]
    if not freqs:
        return FeatureSet("freq_threshold", (), {"threshold_kind": kind})
    return filter_by_frequency(pool, threshold_value(freqs, kind), threshold_kind=kind)


# -- Helmholtz meaningfulness -------------------------------------------------


def _check_counts(k: int, m: int, n: int) -> None:
    if not (1 <= m <= k):
        raise ParameterError(f"need 1 <= m <= k, got m={m}, k={k}")
    if n < 1:
        raise ParameterError(f"need N >= 1, got {n}")


def log_binomial(k: int, m: int) -> float:
    return math.lgamma(k + 1) - math.lgamma(m + 1) - math.lgamma(k - m + 1)


def nfa(k: int, m: int, n: int) -> float:
    """Natural log of the number of false alarms, C(k, m) / n**(m - 1)."""
    _check_counts(k, m, n)
    if m == k or m == 0:
        log_c = 0.0
    else:
        log_c = log_binomial(k, m)
    return log_c - (m - 1) * math.log(n)


def meaning(k: int, m: int, n: int, log_base: float | None = None) -> float:
    """-(1/m) * log NFA. Natural log unless ``log_base`` is given."""
    value = -nfa(k, m, n) / m
    if log_base is not None:
        value /= math.log(log_base)
    return value + 0.0  # normalizes -0.0


@dataclass(frozen=True)
class MeaningReport:
    per_paragraph: dict[str, dict[int, float]]

    @property
    def doc_meaning(self) -> dict[str, float]:
        return {cid: max(vals.values()) for cid, vals in self.per_paragraph.items()}


def meaning_report(pool: ConceptAnnotations, log_base: float | None = None) -> MeaningReport:
    """Meaning of every concept in every paragraph where it occurs.

    k counts the concept's occurrences in the document and m those in the
    paragraph; N = floor(L / B) where L and B are the total occurrence counts of
    all pool concepts in the document and in the paragraph.
    """
    total = len(pool.occurrences)
    per_paragraph: dict[str, dict[int, float]] = {}
    if total == 0:
        return MeaningReport(per_paragraph)
    paragraph_totals = pool.paragraph_totals
    for cid, st in pool.stats.items():
        per_paragraph[cid] = {
            p: meaning(st.occurrence_count, m, total // paragraph_totals[p], log_base)
            for p, m in sorted(st.per_paragraph_counts.items())
        }
    return MeaningReport(per_paragraph)


def meaningful_features(pool: ConceptAnnotations, epsilon: float = -1.2, log_base: float | None = None) -> FeatureSet:
    """Concepts whose best paragraph meaning is strictly greater than ``epsilon``."""
    doc_meaning = meaning_report(pool, log_base).doc_meaning
    return make_feature_set(
        "helmholtz",
        _singletons(pool, keep=lambda cid, st: doc_meaning[cid] > epsilon, scores=doc_meaning),
        epsilon=epsilon,
    )
