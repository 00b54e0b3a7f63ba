"""The quadrant marked mesh pattern MMP^k and the border pattern p.

An entry ``sigma_i`` matches MMP^k when nothing to its left is larger and at
least ``k - 1`` larger entries sit strictly between it and ``n``. The virtual
entry 0 matches when ``n`` is at position ``k`` or later.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class MatchReport:
    k: int
    matched_positions: tuple[int, ...]
    zero_matches: bool

    @property
    def count_unprimed(self) -> int:
        return len(self.matched_positions)

    @property
    def count_primed(self) -> int:
        return self.count_unprimed + int(self.zero_matches)


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")


def larger_before_max(sigma: Sequence[int], i: int) -> int:
    """Number of entries larger than ``sigma_i`` strictly between position ``i`` and ``n``.

    ``i = 0`` refers to the virtual leading 0.
    """
    m = list(sigma).index(len(sigma)) + 1
    if i == 0:
        return m - 1
    v = sigma[i - 1]
    return sum(1 for t in range(i, m - 1) if sigma[t] > v)


def mmp_matches(sigma: Sequence[int], k: int) -> MatchReport:
    _check_k(k)
    n = len(sigma)
    m = list(sigma).index(n) + 1
    matched = []
    best = 0
    for i, v in enumerate(sigma, start=1):
        if v <= best:
            continue
        best = v
        if v == n:
            break
        if sum(1 for t in range(i, m - 1) if sigma[t] > v) >= k - 1:
            matched.append(i)
    return MatchReport(k, tuple(matched), m >= k)


def mmp_count(sigma: Sequence[int], k: int) -> int:
    return mmp_matches(sigma, k).count_unprimed


def mmp_count_primed(sigma: Sequence[int], k: int) -> int:
    return mmp_matches(sigma, k).count_primed


@dataclass(frozen=True)
class Classification:
    kind: str  # "cannot_match" | "almost_match" | "matches"
    j: int | None = None

    def __str__(self) -> str:
        return f"matches({self.j})" if self.kind == "matches" else self.kind


def classify(sigma: Sequence[int], k: int) -> Classification:
    rep = mmp_matches(sigma, k)
    c = rep.count_primed
    if c == 0:
        return Classification("cannot_match")
    if c == 1:
        return Classification("almost_match")
    return Classification("matches", rep.count_unprimed)


def border_p_count(sigma: Sequence[int]) -> int:
    """Occurrences of the border pattern p; 0 for every shape that cannot host one."""
    n = len(sigma)
    if n < 4 or sigma[0] == 1 or sigma[-1] != n:
        return 0
    one = list(sigma).index(1)
    first = sigma[0]
    return sum(1 for v in sigma[one + 1 : n - 1] if first < v < n)
