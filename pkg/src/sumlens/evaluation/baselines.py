"""Lead and random reference systems."""

from __future__ import annotations

import random

from sumlens.bayes import Summary, target_count
from sumlens.document import Document


def _target(doc: Document, rate: float) -> int:
    n = len(doc)
    return n if rate >= 1 else target_count(rate, n)


def lead_baseline(doc: Document, rate: float) -> Summary:
    """The first ceil(rate * n) body sentences."""
    k = _target(doc, rate)
    return Summary(tuple(range(k)), k)


def random_baseline(doc: Document, rate: float, seed: int = 0) -> Summary:
    """ceil(rate * n) distinct sentences drawn with ``random.Random(seed).sample``.

    The generator is CPython's Mersenne Twister, so a seed reproduces the same
    selection on every platform.
    """
    k = _target(doc, rate)
    picked = random.Random(seed).sample(range(len(doc)), k)
    return Summary(tuple(sorted(picked)), k)
