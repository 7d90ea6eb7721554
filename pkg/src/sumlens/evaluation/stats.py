"""Wilcoxon signed-rank test for paired per-document scores."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Sequence

from sumlens.errors import ParameterError

MIN_NONZERO = 6
EXACT_MAX_N = 12


@dataclass(frozen=True)
class WilcoxonResult:
    n: int  # nonzero differences
    w_plus: float
    w_minus: float
    z: float
    p_value: float
    method: str
    degenerate: bool = False
    alpha: float = 0.05

    @property
    def statistic(self) -> float:
        """The conventional W, min(W+, W-)."""
        return min(self.w_plus, self.w_minus)

    @property
    def significant(self) -> bool:
        return not self.degenerate and self.p_value < self.alpha

    @property
    def direction(self) -> str:
        """``"A"`` when the first system scores higher, ``"B"`` when the second does."""
        if self.w_plus > self.w_minus:
            return "A"
        if self.w_minus > self.w_plus:
            return "B"
        return "none"

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(W=self.statistic, significant=self.significant, direction=self.direction)
        return d


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with ties sharing the mean rank."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for k in range(i, j + 1):
            ranks[order[k]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def _exact_p(ranks: Sequence[float], w_plus: float) -> float:
    """Two-sided p from the exact null distribution of W+ (counting over doubled ranks)."""
    doubled = [round(2 * r) for r in ranks]
    total = sum(doubled)
    dist = Counter({0: 1})
    for r in doubled:
        nxt = Counter(dist)
        for s, c in dist.items():
            nxt[s + r] += c
        dist = nxt
    observed = abs(round(2 * w_plus) * 2 - total)  # |2*W+ - mean|, in doubled units
    extreme = sum(c for s, c in dist.items() if abs(2 * s - total) >= observed)
    return min(1.0, extreme / 2 ** len(ranks))


def wilcoxon_signed_rank(a: Sequence[float], b: Sequence[float], method: str = "auto", alpha: float = 0.05) -> WilcoxonResult:
    """Paired test of ``a`` against ``b``.

    Zero differences are dropped and tied magnitudes share ranks. ``"normal"``
    uses the normal approximation with tie and continuity corrections;
    ``"exact"`` enumerates the null distribution of W+. ``"auto"`` is exact for
    at most 12 nonzero differences and normal above that.
    """
    if len(a) != len(b):
        raise ParameterError("paired samples must have equal length")
    if method not in ("auto", "normal", "exact"):
        raise ParameterError(f"unknown method {method!r}")
    diffs = [x - y for x, y in zip(a, b) if x != y]
    n = len(diffs)
    if n == 0:
        return WilcoxonResult(0, 0.0, 0.0, 0.0, 1.0, "none", degenerate=True, alpha=alpha)
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_N else "normal"
    if n < MIN_NONZERO:
        raise ParameterError(f"need at least {MIN_NONZERO} nonzero differences, got {n}")

    ranks = average_ranks([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)

    mean = n * (n + 1) / 4
    ties = Counter(ranks).values()
    var = n * (n + 1) * (2 * n + 1) / 24 - sum(t**3 - t for t in ties) / 48
    delta = w_plus - mean
    correction = 0.5 * (delta > 0) - 0.5 * (delta < 0)
    z = (delta - correction) / math.sqrt(var) if var > 0 else 0.0
    if method == "normal":
        p = min(1.0, math.erfc(abs(z) / math.sqrt(2)))
    else:
        p = _exact_p(ranks, w_plus)
    return WilcoxonResult(n, w_plus, w_minus, z, p, method, alpha=alpha)
