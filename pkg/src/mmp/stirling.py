"""Exact Stirling, r-Stirling and harmonic-sum arithmetic.

Every route to the r-Stirling numbers lives here so the routes can be checked
against each other. Integers are Python ints, rationals are ``Fraction``.
No floating point is used anywhere in this module.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


def _nonneg(**kw: int) -> None:
    for name, v in kw.items():
        if v < 0:
            raise ValueError(f"{name} must be non-negative, got {v}")


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} produced the non-integer {x}")
    return x.numerator


# Classical Stirling numbers of the first kind

@lru_cache(maxsize=None)
def _c(n: int, k: int) -> int:
    if n == 0:
        return int(k == 0)
    if k == 0 or k > n:
        return 0
    return (n - 1) * _c(n - 1, k) + _c(n - 1, k - 1)


def stirling1_unsigned(n: int, k: int) -> int:
    """``c(n, k)``: permutations of n with k cycles (equivalently k pseudocycles)."""
    _nonneg(n=n, k=k)
    # fill bottom-up so deep n does not hit the recursion limit
    for m in range(n):
        _c(m, min(k, m))
    return _c(n, k)


def stirling1_signed(n: int, k: int) -> int:
    return (-1) ** ((n - k) % 2) * stirling1_unsigned(n, k)


# r-Stirling numbers

def rising_product(start: int, stop: int) -> list[int]:
    """Coefficients (ascending degree) of ``(x+start)(x+start+1)...(x+stop-1)``."""
    coeffs = [1]
    for a in range(start, stop):
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d] += a * c
            nxt[d + 1] += c
        coeffs = nxt
    return coeffs


@lru_cache(maxsize=None)
def _rstir_row(n: int, r: int) -> tuple[int, ...]:
    return tuple(rising_product(r, n))


def r_stirling(n: int, m: int, r: int) -> int:
    """``[n m]_r`` as the coefficient of ``x^(m-r)`` in ``(x+r)...(x+n-1)``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if n < r:
        raise ValueError("n must be at least r")
    if m < r:
        raise ValueError("m must be at least r")
    row = _rstir_row(n, r)
    d = m - r
    return row[d] if d < len(row) else 0


def r_stirling_via_classical(n: int, j: int, k: int) -> int:
    """``[n j+k-1]_{k-1}`` as a binomial-weighted sum of ``c(n-k+1, i)``."""
    if k < 2 or j < 0 or j > n - k + 1:
        raise ValueError(f"need k >= 2 and 0 <= j <= n-k+1 (n={n}, k={k}, j={j})")
    top = n - k + 1
    return sum(comb(i, j) * stirling1_unsigned(top, i) * (k - 1) ** (i - j) for i in range(j, top + 1))


def r_stirling_cross_recurrence(n: int, j: int, k: int) -> int:
    """``[n j+k]_k`` as an alternating sum of ``[n i+k-1]_{k-1}``."""
    if k < 2 or j < 0 or j > n - k:
        raise ValueError(f"need k >= 2 and 0 <= j <= n-k (n={n}, k={k}, j={j})")
    return sum(
        (1 - k) ** (i - j - 1) * r_stirling(n, i + k - 1, k - 1) for i in range(j + 1, n - k + 2)
    )


def position_recurrence(n: int, m: int, r: int) -> int:
    """``[n m]_r`` counted by the position of n."""
    if r <= 1 or not n >= m >= r:
        raise ValueError(f"need r > 1 and n >= m >= r (n={n}, m={m}, r={r})")
    total = 0
    for i in range(n - m + 1):
        ways = factorial(n - r) // factorial(m + i - r)
        total += ways * r_stirling(m + i - 1, m - 1, r - 1)
    return total


def a001712_signed_formula(n: int) -> int:
    """``C_{n,4,2}`` as an alternating sum of signed Stirling numbers."""
    if n < 5:
        raise ValueError("formula is stated for n >= 5")
    s = sum(
        (-1) ** ((n + i + 1) % 2) * comb(i, 2) * 3 ** (i - 2) * stirling1_signed(n - 3, i)
        for i in range(2, n - 2)
    )
    return 6 * s


# Harmonic sums

@lru_cache(maxsize=None)
def _h_iter(n: int, j: int) -> Fraction:
    if j == 0:
        return Fraction(1)
    total = Fraction(0)
    for i in range(1, n + 1):
        total += _h_iter(i, j - 1) / i
    return total


def harmonic_iterated(n: int, j: int) -> Fraction:
    """``H_n^{(j)}``: j-fold 1/i weighted prefix sums, with ``H_n^{(0)} = 1``."""
    _nonneg(n=n, j=j)
    if j == 0:
        return Fraction(1)
    for level in range(1, j):
        _h_iter(n, level)
    return _h_iter(n, j)


@lru_cache(maxsize=None)
def _esym_reciprocals(n: int) -> tuple[Fraction, ...]:
    # e_j(1, 1/2, ..., 1/n) for j = 0..n
    e = [Fraction(1)]
    for i in range(1, n + 1):
        nxt = e + [Fraction(0)]
        for d in range(len(e), 0, -1):
            nxt[d] = (e[d] if d < len(e) else 0) + e[d - 1] / i
        e = nxt
    return tuple(e)


@lru_cache(maxsize=None)
def _h_nested(n: int, j: int, level: int) -> Fraction:
    if level == 1:
        e = _esym_reciprocals(n)
        return e[j] if j < len(e) else Fraction(0)
    return sum((_h_nested(i, j, level - 1) for i in range(1, n + 1)), Fraction(0))


def harmonic_nested(n: int, j: int, level: int) -> Fraction:
    """``H^level_{n,j}``: elementary symmetric reciprocal sum, then prefix sums."""
    _nonneg(n=n, j=j)
    if level < 1:
        raise ValueError("level must be at least 1")
    if n < j:
        return Fraction(0)
    return _h_nested(n, j, level)


def stirling1_negative(n: int, k: int) -> Fraction:
    """``s(-n, k)``, defined through ``(-1)^k n! s(-n,k) = H_n^{(k)}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _nonneg(k=k)
    return (-1) ** (k % 2) * harmonic_iterated(n, k) / factorial(n)


def r_stirling_via_harmonic(n: int, m: int, r: int) -> int:
    if r < 1 or m <= r or n < r:
        raise ValueError(f"need r >= 1, m > r, n >= r (n={n}, m={m}, r={r})")
    value = factorial(n - r) * harmonic_nested(n - r, m - r, r)
    return _as_int(value, "(n-r)! * H^r_{n-r,m-r}")


def r_stirling_via_neg_stirling(n: int, j: int, r: int) -> int:
    """``[n j+r]_r`` as ``sum_i s(1-r, j+1-i) c(n, i)``."""
    if r < 2 or j < 1 or n < j + r - 1:
        raise ValueError(f"need r >= 2, j >= 1, n >= j+r-1 (n={n}, j={j}, r={r})")
    value = sum(
        (stirling1_negative(r - 1, j + 1 - i) * stirling1_unsigned(n, i) for i in range(1, j + 2)),
        Fraction(0),
    )
    return _as_int(value, "negative-Stirling expansion")


def almost_match_constant(k: int) -> Fraction:
    """The constant A with ``C_{n,k,1} = (k-1) c(n,2) - A c(n,1)``."""
    if k < 3:
        raise ValueError("k must be at least 3")
    f = factorial(k - 2)
    return Fraction(stirling1_unsigned(k, 2) - f, f)
