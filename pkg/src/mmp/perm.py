"""Permutations in one-line notation and the structure the pattern code needs.

Positions and values are 1-based throughout. The virtual leading entry
``sigma_0 = 0`` is never stored; callers that need it model it explicitly.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

#: Largest n for which exhaustive operations run without an explicit override.
DEFAULT_MAX_N = int(os.environ.get("MMP_MAX_N", "9"))


class PermutationError(ValueError):
    """Base class for malformed permutation input."""


class EmptyPermutationError(PermutationError):
    pass


class DuplicateValueError(PermutationError):
    pass


class ValueOutOfRangeError(PermutationError):
    pass


class Permutation(tuple):
    """An immutable permutation of ``1..n`` stored as its one-line word.

    >>> p = Permutation([5, 6, 4, 1, 8, 7, 3, 2])
    >>> p.n, p[0], str(p)
    (8, 5, '56418732')
    """

    def __new__(cls, word: Sequence[int] = ()):
        word = tuple(int(v) for v in word)
        _validate(word)
        return super().__new__(cls, word)

    @property
    def n(self) -> int:
        return len(self)

    def at(self, i: int) -> int:
        """Value at 1-based position ``i``."""
        if not 1 <= i <= len(self):
            raise IndexError(f"position {i} outside 1..{len(self)}")
        return self[i - 1]

    def position(self, v: int) -> int:
        """1-based position of value ``v``."""
        return self.index(v) + 1

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)})"


def _validate(word: tuple[int, ...]) -> None:
    if not word:
        raise EmptyPermutationError("permutation must have at least one entry")
    n = len(word)
    seen = set()
    for v in word:
        if not 1 <= v <= n:
            raise ValueOutOfRangeError(f"value {v} outside 1..{n}")
        if v in seen:
            raise DuplicateValueError(f"duplicate value {v}")
        seen.add(v)


_SEP = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Permutation:
    """Parse comma/whitespace separated values, or a compact digit string when n <= 9."""
    text = text.strip()
    if not text:
        raise EmptyPermutationError("empty permutation text")
    tokens = [t for t in _SEP.split(text) if t]
    if len(tokens) == 1 and len(tokens[0]) > 1:
        digits = tokens[0]
        if not digits.isdigit():
            raise PermutationError(f"not a decimal integer: {digits!r}")
        if len(digits) > 9:
            raise PermutationError("compact digit form is only accepted for n <= 9")
        tokens = list(digits)
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise PermutationError(f"not a decimal integer list: {text!r}") from exc
    return Permutation(values)


def reduce(word: Sequence[int]) -> Permutation:
    """Order-isomorphic relabeling of distinct integers onto ``1..len(word)``.

    >>> str(reduce((3, 6, 2, 5)))
    '2413'
    """
    word = tuple(word)
    if len(set(word)) != len(word):
        raise DuplicateValueError("reduce() needs distinct entries")
    rank = {v: r for r, v in enumerate(sorted(word), start=1)}
    return Permutation(rank[v] for v in word)


def left_to_right_maxima(sigma: Sequence[int]) -> list[int]:
    """Ascending 1-based positions of the left-to-right maxima."""
    out = []
    best = 0
    for i, v in enumerate(sigma, start=1):
        if v > best:
            out.append(i)
            best = v
    return out


@dataclass(frozen=True)
class PseudocycleDecomposition:
    """Segments are inclusive ``(start, end)`` position ranges, one per pseudocycle."""

    segments: tuple[tuple[int, int], ...]

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    def words(self, sigma: Sequence[int]) -> list[tuple[int, ...]]:
        return [tuple(sigma[s - 1 : e]) for s, e in self.segments]


def pseudocycle_decomposition(sigma: Sequence[int]) -> PseudocycleDecomposition:
    heads = left_to_right_maxima(sigma)
    ends = [h - 1 for h in heads[1:]] + [len(sigma)]
    return PseudocycleDecomposition(tuple(zip(heads, ends)))


def check_bound(n: int, max_n: int | None) -> None:
    limit = DEFAULT_MAX_N if max_n is None else max_n
    if n > limit:
        raise ValueError(f"n={n} exceeds the exhaustive bound {limit}; pass a larger max_n to override")


def enumerate_sn(n: int, first: int | None = None) -> Iterator[Permutation]:
    """All permutations of ``1..n`` in lexicographic order.

    With ``first`` set, only the shard whose first entry equals ``first``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if first is None:
        for w in itertools.permutations(range(1, n + 1)):
            yield Permutation(w)
        return
    if not 1 <= first <= n:
        raise ValueError(f"shard value {first} outside 1..{n}")
    rest = [v for v in range(1, n + 1) if v != first]
    for w in itertools.permutations(rest):
        yield Permutation((first,) + w)


def delete_value_and_reduce(sigma: Sequence[int], v: int) -> Permutation:
    if len(sigma) < 2:
        raise ValueError("cannot delete from a permutation of length 1")
    if v not in sigma:
        raise ValueError(f"value {v} does not occur")
    return reduce([x for x in sigma if x != v])
