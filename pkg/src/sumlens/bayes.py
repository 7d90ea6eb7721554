"""Boolean sentence vectors, the naive Bayes model with frequency coefficients, and selection.

Both classes share the likelihood estimate ``d`` (share of vectors where the
feature is True), so the likelihood terms cancel in the odds ratio and the
ranking is driven by the prior and the coefficients::

    log_odds = ln(p_yes / p_no) + sum_k (+2 ln freq_k if f_k else -2 ln freq_k)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

from sumlens.document import ConceptAnnotations, Document
from sumlens.errors import NoClassifiableSentences, ParameterError
from sumlens.features import FeatureSet

log = logging.getLogger(__name__)

YES, NO = "yes", "no"


@dataclass(frozen=True)
class SentenceVector:
    sentence_index: int
    values: tuple[bool, ...]


def build_vectors(ann: ConceptAnnotations, fs: FeatureSet) -> list[SentenceVector]:
    """One vector per sentence with at least one True feature.

    A feature is True when every one of its concepts occurs in the sentence.
    """
    vectors = []
    for i, present in enumerate(ann.sentence_concepts):
        values = tuple(f.concepts <= present for f in fs.features)
        if any(values):
            vectors.append(SentenceVector(i, values))
    if not vectors:
        raise NoClassifiableSentences("no sentence contains any selected feature")
    return vectors


def target_count(compression_rate: float, total_sentences: int) -> int:
    """ceil(rate * total), immune to float noise such as 0.3 * 10 = 3.0000000000000004."""
    if not (0 < compression_rate < 1):
        raise ParameterError(f"compression rate must be in (0, 1), got {compression_rate}")
    return math.ceil(round(compression_rate * total_sentences, 9))


def clamp(p: float, eps: float) -> float:
    return min(max(p, eps), 1.0 - eps)


@dataclass(frozen=True)
class ClassifierModel:
    p_yes: float
    d: tuple[float, ...]
    freqs: tuple[int, ...]
    eps_p: float
    target: int
    n_vectors: int
    # features inactive for this estimate (no remaining vector holds them)
    active: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        if not self.active:
            object.__setattr__(self, "active", tuple(f > 0 for f in self.freqs))

    @property
    def p_no(self) -> float:
        return 1.0 - self.p_yes

    def likelihood(self, k: int, value: bool) -> float:
        d = clamp(self.d[k], self.eps_p)
        return d if value else 1.0 - d


def estimate_model(
    vectors: Sequence[SentenceVector], target: int, n_features: int | None = None
) -> ClassifierModel:
    """Prior, per-feature likelihood and frequency over ``vectors``.

    ``target`` is the number of sentences still to pick. A feature's frequency is
    the number of these vectors where it is True, which for a fresh model equals
    its document frequency.
    """
    if not vectors:
        raise NoClassifiableSentences("cannot estimate a model without vectors")
    n = len(vectors)
    width = len(vectors[0].values) if n_features is None else n_features
    counts = [0] * width
    for v in vectors:
        for k, value in enumerate(v.values):
            counts[k] += value
    eps = 1.0 / (2 * n)
    return ClassifierModel(
        p_yes=clamp(min(target, n) / n, eps),
        d=tuple(c / n for c in counts),
        freqs=tuple(counts),
        eps_p=eps,
        target=target,
        n_vectors=n,
    )


def coefficient(value: bool, freq: int, cls: str) -> float:
    """freq rewards presence in class yes and absence in class no; 1/freq otherwise."""
    if freq < 1:
        raise ParameterError("coefficient needs freq >= 1")
    if cls not in (YES, NO):
        raise ParameterError(f"unknown class {cls!r}")
    return float(freq) if (value == (cls == YES)) else 1.0 / freq


def log_posterior(vector: SentenceVector, model: ClassifierModel, cls: str, use_coefficients: bool = True) -> float:
    """Unnormalized log posterior of ``cls`` given ``vector``."""
    total = math.log(model.p_yes if cls == YES else model.p_no)
    for k, value in enumerate(vector.values):
        if not model.active[k]:
            continue
        total += math.log(model.likelihood(k, value))
        if use_coefficients:
            total += math.log(coefficient(value, model.freqs[k], cls))
    return total


def por(vector: SentenceVector, model: ClassifierModel, use_coefficients: bool = True) -> float:
    """Log posterior odds ratio, ln P(yes | V) - ln P(no | V)."""
    return log_posterior(vector, model, YES, use_coefficients) - log_posterior(vector, model, NO, use_coefficients)


@dataclass(frozen=True)
class Summary:
    selected: tuple[int, ...]
    target_count: int
    log_odds: dict[int, float] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def _odds_terms(model: ClassifierModel, use_coefficients: bool):
    """Per-feature log-odds contribution for a True and a False value, computed once per model."""
    base = math.log(model.p_yes) - math.log(model.p_no)
    terms = []
    for k, active in enumerate(model.active):
        if not active:
            terms.append((0.0, 0.0))
            continue
        pair = []
        for value in (True, False):
            delta = 0.0
            if use_coefficients:
                delta = math.log(coefficient(value, model.freqs[k], YES)) - math.log(coefficient(value, model.freqs[k], NO))
            # the likelihood is shared by both classes and cancels
            pair.append(delta)
        terms.append(tuple(pair))
    return base, terms


def _best(vectors, model, use_coefficients):
    base, terms = _odds_terms(model, use_coefficients)
    scored = [
        (base + math.fsum(on if value else off for value, (on, off) in zip(v.values, terms)), v.sentence_index, v)
        for v in vectors
    ]
    scored.sort(key=lambda t: (-t[0], t[1]))
    return scored


def select_sentences(
    vectors: Sequence[SentenceVector],
    target: int,
    use_coefficients: bool = True,
    redundancy_reduction: bool = True,
) -> Summary:
    """Pick ``target`` sentences by descending log odds (ties: earlier sentence first).

    With redundancy reduction the model is re-estimated over the not yet selected
    vectors before every pick, so concepts already covered lose weight.
    """
    if not vectors:
        raise NoClassifiableSentences("nothing to select from")
    warnings = []
    if target > len(vectors):
        msg = f"summary needs {target} sentences but only {len(vectors)} are classifiable; selecting all"
        log.warning(msg)
        warnings.append(msg)
    take = min(target, len(vectors))
    first = estimate_model(vectors, target)
    scored = _best(vectors, first, use_coefficients)
    log_odds = {idx: score for score, idx, _ in scored}

    if not redundancy_reduction:
        chosen = [idx for _, idx, _ in scored[:take]]
    else:
        remaining = list(vectors)
        chosen = []
        model = first
        for t in range(take):
            if t:
                model = estimate_model(remaining, target - t)
            _, idx, vec = _best(remaining, model, use_coefficients)[0]
            chosen.append(idx)
            remaining.remove(vec)
    return Summary(tuple(sorted(chosen)), target, log_odds, tuple(warnings))


def generate_summary(summary: Summary, doc: Document) -> str:
    """Selected sentences in document order, one per line."""
    return "\n".join(doc.body_sentences[i].text for i in sorted(summary.selected))
