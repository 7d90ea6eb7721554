"""Levelwise Apriori over sentence/concept transactions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from sumlens.document import ConceptAnnotations
from sumlens.errors import EmptyFeatureSet, ParameterError
from sumlens.features import FeatureSet, filter_generic, make_feature_set


@dataclass(frozen=True)
class TransactionSet:
    transactions: tuple[frozenset[str], ...]

    @classmethod
    def from_iterables(cls, rows: Iterable[Iterable[str]]) -> "TransactionSet":
        return cls(tuple(frozenset(r) for r in rows))

    @classmethod
    def from_annotations(cls, ann: ConceptAnnotations) -> "TransactionSet":
        """One transaction per sentence, including sentences without concepts."""
        return cls(ann.sentence_concepts)

    @property
    def n(self) -> int:
        return len(self.transactions)


@dataclass(frozen=True)
class FrequentItemset:
    items: tuple[str, ...]  # sorted
    support_count: int
    support: float

    def __len__(self):
        return len(self.items)


def _is_frequent(count: int, n: int, phi: float) -> bool:
    # count/n is correctly rounded, so it equals phi exactly when the ratio is phi
    return count / n >= phi


def mine_frequent_itemsets(ts: TransactionSet, phi: float) -> list[FrequentItemset]:
    """Every itemset with support >= ``phi``.

    Sorted by descending support, ascending size, then items.
    """
    if not (0 < phi <= 1):
        raise ParameterError(f"minimum support must be in (0, 1], got {phi}")
    n = ts.n
    if n == 0:
        return []

    # vertical layout: item -> bitmask of the transactions holding it
    tidsets: dict[str, int] = {}
    for t, items in enumerate(ts.transactions):
        bit = 1 << t
        for item in items:
            tidsets[item] = tidsets.get(item, 0) | bit

    level: dict[tuple[str, ...], int] = {}
    for item in sorted(tidsets):
        mask = tidsets[item]
        if _is_frequent(mask.bit_count(), n, phi):
            level[(item,)] = mask

    found: dict[tuple[str, ...], int] = {}
    while level:
        found.update((k, v.bit_count()) for k, v in level.items())
        keys = sorted(level)
        nxt: dict[tuple[str, ...], int] = {}
        for i, a in enumerate(keys):
            for b in keys[i + 1 :]:
                if a[:-1] != b[:-1]:
                    break
                cand = a + (b[-1],)
                if any(sub not in level for sub in combinations(cand, len(cand) - 1)):
                    continue
                mask = level[a] & tidsets[b[-1]]
                if _is_frequent(mask.bit_count(), n, phi):
                    nxt[cand] = mask
        level = nxt

    result = [FrequentItemset(items, count, count / n) for items, count in found.items()]
    result.sort(key=lambda f: (-f.support_count, len(f.items), f.items))
    return result


def itemset_features(ann: ConceptAnnotations, stoplist: Iterable[str], phi: float = 0.09) -> FeatureSet:
    """Frequent itemsets of non-generic concepts, one feature each (all sizes)."""
    pool = filter_generic(ann, stoplist)
    itemsets = mine_frequent_itemsets(TransactionSet.from_annotations(pool), phi)
    if not itemsets:
        raise EmptyFeatureSet(f"no itemset reaches minimum support {phi}")
    return make_feature_set(
        "itemset",
        ((frozenset(f.items), f.support_count, f.support) for f in itemsets),
        phi=phi,
    )


def itemsets_to_rows(itemsets: Sequence[FrequentItemset]) -> list[tuple[str, int, float]]:
    return [(";".join(f.items), f.support_count, f.support) for f in itemsets]
