"""Concept coverage of summaries and corpus rank-frequency tables."""

from __future__ import annotations

import math
import statistics
from collections import Counter
from typing import Iterable, NamedTuple

from sumlens.document import ConceptAnnotations


def concept_coverage(selected: Iterable[int], ann: ConceptAnnotations) -> int:
    """Number of distinct concepts appearing in the selected sentences."""
    covered: set[str] = set()
    for i in selected:
        covered |= ann.sentence_concepts[i]
    return len(covered)


class RankRow(NamedTuple):
    rank: int
    concept_id: str
    occurrence_count: int


def zipf_table(annotations: Iterable[ConceptAnnotations]) -> list[RankRow]:
    """Corpus-wide occurrence counts ranked from most to least frequent (ties by id).

    Pass body annotations or abstract annotations depending on which source is
    being examined.
    """
    counts: Counter = Counter()
    for ann in annotations:
        counts.update(o.concept_id for o in ann.occurrences)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [RankRow(r, cid, c) for r, (cid, c) in enumerate(ordered, 1)]


def loglog_slope(table: list[RankRow]) -> float:
    """Least-squares slope of log(count) against log(rank)."""
    if len(table) < 2:
        raise ValueError("need at least two ranks for a slope")
    xs = [math.log(r.rank) for r in table]
    ys = [math.log(r.occurrence_count) for r in table]
    return statistics.linear_regression(xs, ys).slope
