"""ROUGE-N, ROUGE-SU and ROUGE-W over pre-tokenized text.

No stemming and no stopword removal; tokens are compared as given.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from sumlens.errors import ParameterError, UndefinedScore

METRICS = ("r1", "r2", "rw12", "rsu4")


@dataclass(frozen=True)
class RougeScores:
    metric: str
    recall: float
    precision: float

    @property
    def f1(self) -> float:
        if self.recall + self.precision == 0:
            return 0.0
        return 2 * self.recall * self.precision / (self.recall + self.precision)


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def _clipped_overlap(cand: Counter, ref: Counter) -> int:
    return sum((cand & ref).values())


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int = 1) -> RougeScores:
    if n not in (1, 2):
        raise ParameterError(f"ROUGE-N supports n in {{1, 2}}, got {n}")
    if len(reference) < n:
        raise UndefinedScore(f"reference has fewer than {n} tokens")
    cand, ref = ngrams(candidate, n), ngrams(reference, n)
    hits = _clipped_overlap(cand, ref)
    return RougeScores(f"r{n}", hits / sum(ref.values()), _ratio(hits, sum(cand.values())))


def skip_bigrams(tokens: Sequence[str], max_skip: int) -> Counter:
    """Ordered pairs with at most ``max_skip`` tokens in between, plus unigrams."""
    units: Counter = Counter((t,) for t in tokens)
    for i in range(len(tokens)):
        for j in range(i + 1, min(len(tokens), i + max_skip + 2)):
            units[(tokens[i], tokens[j])] += 1
    return units


def rouge_su(candidate: Sequence[str], reference: Sequence[str], max_skip: int = 4) -> RougeScores:
    if max_skip < 0:
        raise ParameterError("max_skip must be >= 0")
    if not reference:
        raise UndefinedScore("empty reference")
    cand, ref = skip_bigrams(candidate, max_skip), skip_bigrams(reference, max_skip)
    hits = _clipped_overlap(cand, ref)
    return RougeScores(f"rsu{max_skip}", hits / sum(ref.values()), _ratio(hits, sum(cand.values())))


def wlcs(x: Sequence[str], y: Sequence[str], weight: Callable[[float], float]) -> float:
    """Weighted longest common subsequence score.

    Dynamic program that remembers the length of the consecutive match ending
    at each cell and charges ``weight(k + 1) - weight(k)`` for extending it.
    """
    m = len(y)
    c_prev = [0.0] * (m + 1)
    w_prev = [0] * (m + 1)
    for xi in x:
        c_cur = [0.0] * (m + 1)
        w_cur = [0] * (m + 1)
        for j in range(1, m + 1):
            if xi == y[j - 1]:
                k = w_prev[j - 1]
                c_cur[j] = c_prev[j - 1] + weight(k + 1) - weight(k)
                w_cur[j] = k + 1
            elif c_prev[j] > c_cur[j - 1]:
                c_cur[j] = c_prev[j]
            else:
                c_cur[j] = c_cur[j - 1]
        c_prev, w_prev = c_cur, w_cur
    return c_prev[m]


def rouge_w(candidate: Sequence[str], reference: Sequence[str], weight_exponent: float = 1.2) -> RougeScores:
    if weight_exponent < 1:
        raise ParameterError("weight exponent must be >= 1")
    if not reference or not candidate:
        raise UndefinedScore("ROUGE-W needs non-empty candidate and reference")
    alpha = weight_exponent

    def f(k):
        return k**alpha

    score = wlcs(candidate, reference, f)
    inv = 1.0 / alpha
    recall = (score / f(len(reference))) ** inv
    precision = (score / f(len(candidate))) ** inv
    return RougeScores(f"rw{str(alpha).replace('.', '')}", min(recall, 1.0), min(precision, 1.0))


def score_all(candidate: Sequence[str], reference: Sequence[str]) -> dict[str, RougeScores]:
    """The four headline metrics keyed by ``r1``, ``r2``, ``rw12`` and ``rsu4``."""
    return {
        "r1": rouge_n(candidate, reference, 1),
        "r2": rouge_n(candidate, reference, 2),
        "rw12": rouge_w(candidate, reference, 1.2),
        "rsu4": rouge_su(candidate, reference, 4),
    }


def best_over_references(candidate: Sequence[str], references: Sequence[Sequence[str]], metric: str) -> RougeScores:
    """Multi-reference scoring: the reference giving the highest F1 wins."""
    fn = {
        "r1": lambda c, r: rouge_n(c, r, 1),
        "r2": lambda c, r: rouge_n(c, r, 2),
        "rw12": lambda c, r: rouge_w(c, r, 1.2),
        "rsu4": lambda c, r: rouge_su(c, r, 4),
    }[metric]
    return max((fn(candidate, r) for r in references), key=lambda s: s.f1)
