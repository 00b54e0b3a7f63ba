"""Batch kernels over a whole block of permutations.

Every kernel takes an ``(N, n)`` integer array whose rows are one-line words
with values ``1..n``. Two implementations exist with identical results: numba
``@njit`` loops and vectorised numpy. Set ``MMP_DISABLE_NUMBA=1`` to force the
numpy path; it is also used when numba cannot be imported.
"""
from __future__ import annotations

import itertools
import os
from math import factorial

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("MMP_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")
HAVE_NUMBA = numba is not None
BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"


def all_permutations(n: int, first: int | None = None) -> np.ndarray:
    """Lexicographic block of S_n (or the shard starting with ``first``)."""
    if first is None:
        rows = itertools.permutations(range(1, n + 1))
        count = factorial(n)
    else:
        rest = [v for v in range(1, n + 1) if v != first]
        rows = ((first,) + w for w in itertools.permutations(rest))
        count = factorial(n - 1)
    flat = np.fromiter(itertools.chain.from_iterable(rows), dtype=np.int16, count=count * n)
    return flat.reshape(count, n)


# numpy implementations

def _profile_numpy(perms: np.ndarray) -> np.ndarray:
    N, n = perms.shape
    out = np.full((N, n + 1), -1, dtype=np.int16)
    pos_n = np.argmax(perms == n, axis=1)
    out[:, 0] = pos_n
    runmax = np.maximum.accumulate(perms, axis=1)
    cols = np.arange(n)
    for i in range(n - 1):
        ahead = perms[:, i + 1 :] > perms[:, i : i + 1]
        ahead &= cols[i + 1 :][None, :] < pos_n[:, None]
        cnt = ahead.sum(axis=1)
        live = (perms[:, i] == runmax[:, i]) & (i < pos_n)
        out[live, i + 1] = cnt[live]
    return out


def _ltr_counts_numpy(perms: np.ndarray) -> np.ndarray:
    runmax = np.maximum.accumulate(perms, axis=1)
    return (perms == runmax).sum(axis=1)


def _top_maxima_numpy(perms: np.ndarray, r: int) -> np.ndarray:
    n = perms.shape[1]
    runmax = np.maximum.accumulate(perms, axis=1)
    ltr = perms == runmax
    return (ltr & (perms > n - r)).sum(axis=1) == r


def _border_numpy(perms: np.ndarray) -> np.ndarray:
    N, n = perms.shape
    if n < 4:
        return np.zeros(N, dtype=np.int64)
    first = perms[:, :1]
    pos1 = np.argmax(perms == 1, axis=1)
    cols = np.arange(n)
    after_one = (cols[None, :] > pos1[:, None]) & (cols[None, :] < n - 1)
    hits = after_one & (perms > first) & (perms < n)
    ok = (perms[:, 0] != 1) & (perms[:, -1] == n)
    return np.where(ok, hits.sum(axis=1), 0).astype(np.int64)


# numba implementations

def _profile_loop(perms):
    N, n = perms.shape
    out = np.full((N, n + 1), -1, dtype=np.int16)
    for row in range(N):
        w = perms[row]
        m = 0
        while w[m] != n:
            m += 1
        out[row, 0] = m
        best = 0
        for i in range(m):
            v = w[i]
            if v > best:
                best = v
                cnt = 0
                for t in range(i + 1, m):
                    if w[t] > v:
                        cnt += 1
                out[row, i + 1] = cnt
    return out


def _ltr_counts_loop(perms):
    N, n = perms.shape
    out = np.zeros(N, dtype=np.int64)
    for row in range(N):
        best = 0
        c = 0
        for i in range(n):
            if perms[row, i] > best:
                best = perms[row, i]
                c += 1
        out[row] = c
    return out


def _top_maxima_loop(perms, r):
    N, n = perms.shape
    out = np.zeros(N, dtype=np.bool_)
    for row in range(N):
        best = 0
        c = 0
        for i in range(n):
            v = perms[row, i]
            if v > best:
                best = v
                if v > n - r:
                    c += 1
        out[row] = c == r
    return out


def _border_loop(perms):
    N, n = perms.shape
    out = np.zeros(N, dtype=np.int64)
    if n < 4:
        return out
    for row in range(N):
        w = perms[row]
        if w[0] == 1 or w[n - 1] != n:
            continue
        p1 = 0
        while w[p1] != 1:
            p1 += 1
        c = 0
        for t in range(p1 + 1, n - 1):
            if w[t] > w[0]:
                c += 1
        out[row] = c
    return out


if HAVE_NUMBA:
    _profile_numba = numba.njit(cache=True)(_profile_loop)
    _ltr_counts_numba = numba.njit(cache=True)(_ltr_counts_loop)
    _top_maxima_numba = numba.njit(cache=True)(_top_maxima_loop)
    _border_numba = numba.njit(cache=True)(_border_loop)


IMPLEMENTATIONS = {
    "numpy": {
        "profile": _profile_numpy,
        "ltr_counts": _ltr_counts_numpy,
        "top_maxima": _top_maxima_numpy,
        "border": _border_numpy,
    },
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "profile": _profile_numba,
        "ltr_counts": _ltr_counts_numba,
        "top_maxima": _top_maxima_numba,
        "border": _border_numba,
    }


def _impl(name: str, backend: str | None):
    return IMPLEMENTATIONS[backend or BACKEND][name]


def match_profile(perms: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Per row: column 0 holds the position of n (entries before it, all beating
    the virtual 0); column ``i`` holds, for a left-to-right maximum at position
    ``i`` before n, the number of larger entries strictly between it and n, and
    -1 elsewhere.
    """
    return _impl("profile", backend)(np.ascontiguousarray(perms))


def primed_counts(profile: np.ndarray, k: int) -> np.ndarray:
    """mmp^{k'} for every row of a match profile."""
    return (profile >= k - 1).sum(axis=1)


def unprimed_counts(profile: np.ndarray, k: int) -> np.ndarray:
    return (profile[:, 1:] >= k - 1).sum(axis=1)


def ltr_counts(perms: np.ndarray, backend: str | None = None) -> np.ndarray:
    return _impl("ltr_counts", backend)(np.ascontiguousarray(perms))


def top_maxima(perms: np.ndarray, r: int, backend: str | None = None) -> np.ndarray:
    """Rows in which ``n, n-1, ..., n-r+1`` are all left-to-right maxima."""
    return _impl("top_maxima", backend)(np.ascontiguousarray(perms), r)


def border_counts(perms: np.ndarray, backend: str | None = None) -> np.ndarray:
    return _impl("border", backend)(np.ascontiguousarray(perms))
