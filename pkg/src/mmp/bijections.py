"""Constructive correspondences behind the counting identities.

Every map validates its input domain eagerly and raises ``DomainError`` on
anything outside it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .pattern import border_p_count, mmp_count_primed
from .perm import Permutation, left_to_right_maxima, reduce


class DomainError(ValueError):
    """Input lies outside the domain of a correspondence."""


# r-Stirling correspondence: sigma with j+k-1 left-to-right maxima, the top
# k-1 values among them  <->  (k-1)! permutations with mmp^{k'} = j.

@dataclass(frozen=True)
class RStirFiber:
    source: Permutation
    k: int
    j: int
    base: Permutation
    images: tuple[Permutation, ...]
    case_tag: str  # "case1": nothing moved, "case2": large followers moved


def rstir_level(sigma: Sequence[int], k: int) -> int:
    """The j for which sigma is counted by ``[n j+k-1]_{k-1}``; raises outside the domain."""
    n = len(sigma)
    if k < 2 or k - 1 > n:
        raise DomainError(f"need 2 <= k <= n+1 (n={n}, k={k})")
    maxima = left_to_right_maxima(sigma)
    values = {sigma[i - 1] for i in maxima}
    missing = [v for v in range(n - k + 2, n + 1) if v not in values]
    if missing:
        raise DomainError(f"top values {missing} are not left-to-right maxima of {sigma}")
    return len(maxima) - (k - 1)


def _rearrangements(base: Sequence[int], positions: Sequence[int]) -> tuple[Permutation, ...]:
    values = sorted(base[p] for p in positions)
    out = []
    for perm in itertools.permutations(values):
        w = list(base)
        for p, v in zip(positions, perm):
            w[p] = v
        out.append(Permutation(w))
    return tuple(out)


def _top_positions(word: Sequence[int], lo: int, hi: int, count: int) -> list[int]:
    """0-based positions of the ``count`` largest entries in ``word[lo:hi]``, ascending."""
    by_value = sorted(range(lo, hi), key=lambda t: -word[t])[:count]
    return sorted(by_value)


def rstir_forward(sigma: Sequence[int], k: int) -> RStirFiber:
    """The (k-1)! permutations with ``mmp^{k'} = j`` attached to sigma.

    Large followers of a top maximum are entries of its pseudocycle exceeding
    the k-th largest left-to-right maximum (the virtual 0 when j = 0). Each
    pseudocycle with large followers loses the stretch from its head to just
    before its last large follower; the stretches go to the end, ordered by
    that last follower. The fiber is every rearrangement of the k-1 largest
    entries between the (j-1)-st maximum and n.
    """
    sigma = Permutation(sigma)
    j = rstir_level(sigma, k)
    n = sigma.n
    w = list(sigma)
    maxima = [p - 1 for p in left_to_right_maxima(w)]
    pos_n = maxima[-1]
    if j == 0:
        threshold, anchor = 0, -1
        heads = maxima[: k - 2]
    else:
        threshold = w[maxima[j - 1]]
        anchor = maxima[j - 2] if j >= 2 else -1
        heads = maxima[j : j + k - 2]
    bounds = heads + [pos_n]
    moves = []
    for r, start in enumerate(heads):
        large = [t for t in range(start + 1, bounds[r + 1]) if w[t] > threshold]
        if large:
            moves.append((w[large[-1]], range(start, large[-1])))
    moves.sort(key=lambda m: m[0])
    moved = {t for _, span in moves for t in span}
    base = [w[t] for t in range(n) if t not in moved]
    for _, span in moves:
        base.extend(w[t] for t in span)
    if j == 0:
        positions = list(range(k - 1))
    else:
        positions = _top_positions(base, anchor + 1, base.index(n), k - 1)
    images = tuple(sorted(_rearrangements(base, positions)))
    return RStirFiber(sigma, k, j, Permutation(base), images, "case2" if moves else "case1")


def _tail_blocks(tail: Sequence[int], heads: set[int]) -> tuple[list[int], list[list[int]]]:
    """Split a tail into the part before the first head and head-led blocks."""
    cuts = [t for t, v in enumerate(tail) if v in heads]
    if not cuts:
        return list(tail), []
    blocks = [list(tail[a:b]) for a, b in zip(cuts, cuts[1:] + [len(tail)])]
    return list(tail[: cuts[0]]), blocks


def rstir_inverse(phi: Sequence[int], k: int) -> Permutation:
    """The sigma whose fiber contains phi."""
    phi = Permutation(phi)
    n = phi.n
    if k < 2 or k - 1 > n:
        raise DomainError(f"need 2 <= k <= n+1 (n={n}, k={k})")
    w = list(phi)
    j = mmp_count_primed(w, k)
    tops = list(range(n - k + 2, n))
    pos_n = w.index(n)
    if j == 0:
        front = [v for v in w[: k - 1] if v != n]
        rest, blocks = _tail_blocks(w[k - 1 :], set(tops))
        followers = sorted(v for v in front if v not in tops)
        pair = {b[0]: b + [f] for b, f in zip(blocks, followers)}
        out = []
        for h in tops:
            out.extend(pair.get(h, [h]))
        return Permutation(out + [n] + rest)
    maxima = [p - 1 for p in left_to_right_maxima(w)]
    anchor = maxima[j - 2] if j >= 2 else -1
    slots = _top_positions(w, anchor + 1, pos_n, k - 1)
    values = sorted(w[t] for t in slots)
    rest, blocks = _tail_blocks(w[pos_n + 1 :], set(tops))
    # smallest value becomes the k-th largest maximum; the next ones are the
    # last large followers, matched to the tail blocks in order
    pair = {b[0]: b + [f] for b, f in zip(blocks, values[1:])}
    fill = {slots[0]: [values[0]]}
    for r, h in enumerate(tops):
        fill[slots[r + 1]] = pair.get(h, [h])
    out = w[: anchor + 1]
    for t in range(anchor + 1, pos_n):
        out.extend(fill.get(t, [w[t]]))
    return Permutation(out + [n] + rest)


def rstir_literal_threshold_base(sigma: Sequence[int], k: int) -> tuple[str, Permutation]:
    """Base image when large followers are measured against the (j-1)-st maximum.

    Kept for comparison only: with that threshold the fibers overlap (first at
    n = 5, k = 3), so ``rstir_forward`` measures against the k-th largest maximum.
    """
    sigma = Permutation(sigma)
    j = rstir_level(sigma, k)
    w = list(sigma)
    maxima = [p - 1 for p in left_to_right_maxima(w)]
    pos_n = maxima[-1]
    if j == 0:
        if pos_n == k - 2:
            return "case1", sigma
        threshold, heads = 0, maxima[: k - 2]
    else:
        b = maxima[j - 1]
        if sum(1 for t in range(b + 1, pos_n) if w[t] > w[b]) < k - 1:
            return "case1", sigma
        threshold = w[maxima[j - 2]] if j >= 2 else 0
        heads = maxima[j : j + k - 2]
    bounds = heads + [pos_n]
    moves = []
    for r, start in enumerate(heads):
        large = [t for t in range(start + 1, bounds[r + 1]) if w[t] > threshold]
        if large:
            moves.append((w[large[-1]], range(start, large[-1])))
    moves.sort(key=lambda m: m[0])
    moved = {t for _, span in moves for t in span}
    base = [w[t] for t in range(len(w)) if t not in moved]
    for _, span in moves:
        base.extend(w[t] for t in span)
    return "case2", Permutation(base)


# Swap correspondence between consecutive k

@dataclass(frozen=True)
class Main2Witness:
    sigma: Permutation
    k: int
    q: int
    pi_q: Permutation


def main2_forward(sigma: Sequence[int], k: int, q: int) -> Main2Witness:
    """Swap the last MMP^k match with the q-th smallest larger entry before n."""
    sigma = Permutation(sigma)
    if k < 2:
        raise DomainError("k must be at least 2")
    j = mmp_count_primed(sigma, k)
    if j < 2 or mmp_count_primed(sigma, k + 1) != j - 1:
        raise DomainError(f"need mmp^{k}' = j >= 2 and mmp^{k + 1}' = j-1 for {sigma}")
    if not 1 <= q <= k - 1:
        raise DomainError(f"q must lie in 1..{k - 1}")
    w = list(sigma)
    maxima = [p - 1 for p in left_to_right_maxima(w)]
    anchor = maxima[j - 2]
    pos_n = w.index(sigma.n)
    larger = sorted((t for t in range(anchor + 1, pos_n) if w[t] > w[anchor]), key=lambda t: w[t])
    t = larger[q - 1]
    w[anchor], w[t] = w[t], w[anchor]
    return Main2Witness(sigma, k, q, Permutation(w))


def main2_inverse(pi: Sequence[int], k: int) -> tuple[Permutation, int]:
    pi = Permutation(pi)
    if k < 2:
        raise DomainError("k must be at least 2")
    j1 = mmp_count_primed(pi, k)
    if j1 < 1 or mmp_count_primed(pi, k + 1) != j1:
        raise DomainError(f"need mmp^{k}' = mmp^{k + 1}' >= 1 for {pi}")
    w = list(pi)
    pos_n = w.index(pi.n)
    head = left_to_right_maxima(w)[j1 - 1] - 1
    chosen = sorted(sorted(range(pos_n), key=lambda t: -w[t])[:k], key=lambda t: w[t])
    q = chosen.index(head)
    if q == 0:
        raise DomainError(f"{pi} has its (j-1)-st maximum as the smallest of the k entries")
    low = chosen[0]
    w[head], w[low] = w[low], w[head]
    return Permutation(w), q


# Deletion map behind the coefficient recurrence

def thm_main_delete_map(sigma: Sequence[int], k: int) -> Permutation:
    """Map sigma in S_n with ``mmp^{k'} >= 1`` to S_{n-1} by removing 1."""
    sigma = Permutation(sigma)
    n = sigma.n
    if k < 2 or n < 2:
        raise DomainError("need k >= 2 and n >= 2")
    if mmp_count_primed(sigma, k) < 1:
        raise DomainError(f"{sigma} cannot match MMP^{k}")
    w = list(sigma)
    branch = delete_map_branch(w, k)
    if branch == "first":
        return reduce(w[1:])
    if branch == "swap":
        p1, pn = w.index(1), w.index(n)
        w[p1], w[pn] = w[pn], w[p1]
    return reduce([v for v in w if v != 1])


def delete_map_branch(sigma: Sequence[int], k: int) -> str:
    """Which rule ``thm_main_delete_map`` applies.

    The swap test comes first: with 1 in front and n at position k both rules
    would apply, and only the swap keeps the map a clean split.
    """
    w = list(sigma)
    n = len(w)
    if w.index(n) == k - 1 and w.index(1) < k - 1:
        return "swap"
    if w[0] == 1:
        return "first"
    return "delete"


# Border pattern p  <->  MMP^{k+1} once, almost MMP^{k+2}

def border_to_mmp(sigma: Sequence[int]) -> Permutation:
    """``s1 A 1 B n  ->  (s1-1) B' (n-1) A'``."""
    sigma = Permutation(sigma)
    if border_p_count(sigma) < 1:
        raise DomainError(f"{sigma} does not match the border pattern")
    w = list(sigma)
    n = sigma.n
    p1 = w.index(1)
    first, a, b = w[0], w[1:p1], w[p1 + 1 : n - 1]
    return Permutation([first - 1] + [v - 1 for v in b] + [n - 1] + [v - 1 for v in a])


def border_from_mmp(phi: Sequence[int], k: int) -> Permutation:
    phi = Permutation(phi)
    if k < 1:
        raise DomainError("k must be at least 1")
    if mmp_count_primed(phi, k + 1) != 2 or mmp_count_primed(phi, k + 2) != 1:
        raise DomainError(f"{phi} must match MMP^{k + 1} exactly once and almost match MMP^{k + 2}")
    w = [v + 1 for v in phi]
    top = phi.n + 1
    m = w.index(top)
    first, b, a = w[0], w[1:m], w[m + 1 :]
    return Permutation([first] + a + [1] + b + [top])
