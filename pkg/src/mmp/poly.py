"""Generating polynomials of mmp^k and the arrow tables relating consecutive k."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable

from . import stirling as st


class IntPolynomial:
    """Dense integer polynomial; ``coeffs[d]`` is the coefficient of ``x^d``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_histogram(cls, counts: dict[int, int]) -> "IntPolynomial":
        if not counts:
            return cls()
        out = [0] * (max(counts) + 1)
        for d, c in counts.items():
            out[d] += c
        return cls(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == IntPolynomial(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        m = max(len(self), len(other))
        return IntPolynomial(self[d] + other[d] for d in range(m))

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        out = [0] * (len(self) + len(other))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_text(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "x" if d == 1 else f"x^{d}"
                body = var if mag == 1 else f"{mag}{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"IntPolynomial({self.to_text()})"

    __str__ = to_text


def linear_product(start: int, stop: int, scale: int = 1) -> IntPolynomial:
    """``scale * (x+start)(x+start+1)...(x+stop-1)``."""
    return IntPolynomial(scale * c for c in st.rising_product(start, stop))


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")


def p_poly(n: int, k: int) -> IntPolynomial:
    """Distribution of the primed statistic over S_n, by the product formula."""
    _check_k(k)
    if n < 1:
        raise ValueError("n must be at least 1")
    if n < k - 1:
        return IntPolynomial([factorial(n)])
    return linear_product(k - 1, n, factorial(k - 1))


def p_poly_recurrence(n: int, k: int) -> IntPolynomial:
    """Same polynomial built by ``C_{n,k,j} = (n-1) C_{n-1,k,j} + C_{n-1,k,j-1}``."""
    _check_k(k)
    if n < k - 1:
        return IntPolynomial([factorial(n)])
    coeffs = [factorial(k - 1)]
    for m in range(k, n + 1):
        nxt = [0] * (len(coeffs) + 1)
        for j in range(len(nxt)):
            nxt[j] = (m - 1) * (coeffs[j] if j < len(coeffs) else 0) + (coeffs[j - 1] if j else 0)
        coeffs = nxt
    return IntPolynomial(coeffs)


def r_poly_from_p(p: IntPolynomial) -> IntPolynomial:
    if len(p) <= 1:
        return IntPolynomial([p[0]])
    return IntPolynomial([p[0] + p[1], *p.coeffs[2:]])


def r_poly(n: int, k: int) -> IntPolynomial:
    """Distribution of the unprimed statistic over S_n."""
    return r_poly_from_p(p_poly(n, k))


def coefficient(n: int, k: int, j: int) -> int:
    """``C_{n,k,j} = (k-1)! [n j+k-1]_{k-1}``."""
    _check_k(k)
    if j < 0:
        raise ValueError("j must be non-negative")
    if n < k - 1:
        return factorial(n) if j == 0 else 0
    return factorial(k - 1) * st.r_stirling(n, j + k - 1, k - 1)


def p3_closed_form(n: int) -> IntPolynomial:
    """``P_n^3`` from partial sums of signed Stirling numbers."""
    if n <= 1:
        raise ValueError("n must exceed 1")
    return IntPolynomial(
        2 * abs(sum(st.stirling1_signed(n, i) for i in range(1, j + 2))) for j in range(n - 1)
    )


def almost_match_closed_form(n: int, k: int) -> int:
    """Number of permutations almost matching MMP^k, via ``(k-1) c(n,2) - A c(n,1)``."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if n < k - 1:
        raise ValueError("n must be at least k-1")
    a = st.almost_match_constant(k)
    value = (k - 1) * st.stirling1_unsigned(n, 2) - a * st.stirling1_unsigned(n, 1)
    return st._as_int(Fraction(value), "almost-match closed form")


def _check_lincomb(k: int, j: int) -> None:
    if j <= 0 or k <= 2:
        raise ValueError(f"need j > 0 and k > 2 (k={k}, j={j})")


def c_nkj_via_harmonic(n: int, k: int, j: int) -> int:
    """``C_{n,k,j}`` as a linear combination of ``c(n,1..j+1)`` with harmonic weights."""
    _check_lincomb(k, j)
    total = Fraction(0)
    for i in range(1, j + 2):
        sign = -1 if (j + 1 - i) % 2 else 1
        total += (k - 1) * st.harmonic_iterated(k - 2, j + 1 - i) * sign * st.stirling1_unsigned(n, i)
    return st._as_int(total, "harmonic linear combination")


def c_nkj_via_neg_stirling(n: int, k: int, j: int) -> int:
    """The same combination written with ``(k-1)! s(2-k, .)``."""
    _check_lincomb(k, j)
    total = Fraction(0)
    for i in range(1, j + 2):
        total += factorial(k - 1) * st.stirling1_negative(k - 2, j + 1 - i) * st.stirling1_unsigned(n, i)
    return st._as_int(total, "negative-Stirling linear combination")


@dataclass(frozen=True)
class ArrowTable:
    """Rows ``P_n^k`` for ``k = 2..n+1`` with arrow labels between consecutive rows.

    ``arrows[(k, j)] = (vertical, diagonal)``: the counts of permutations with
    ``mmp^{k'} = j`` whose ``mmp^{(k+1)'}`` is ``j`` and ``j-1`` respectively.
    """

    n: int
    rows: tuple[IntPolynomial, ...]
    arrows: dict

    def row(self, k: int) -> IntPolynomial:
        return self.rows[k - 2]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": {str(k): self.row(k).to_json() for k in range(2, self.n + 2)},
            "arrows": [
                {"k": k, "j": j, "vertical": str(v), "diagonal": str(d)}
                for (k, j), (v, d) in sorted(self.arrows.items())
            ],
        }

    def to_text(self) -> str:
        lines = []
        for k in range(2, self.n + 2):
            lines.append(f"k={k}: {self.row(k).to_text()}")
            if k <= self.n:
                labels = []
                for j in range(len(self.row(k))):
                    v, d = self.arrows[(k, j)]
                    labels.append(f"[{j}] |{v} /{d}")
                lines.append("      " + "  ".join(labels))
        return "\n".join(lines)

    def to_latex(self) -> str:
        width = 2 * len(self.row(2)) - 1
        pad = [r"\,"] * width
        out = [r"\begin{array}{" + "c" * width + "}"]
        for k in range(2, self.n + 2):
            row = self.row(k)
            cells = []
            for j, c in enumerate(row):
                if j == 0:
                    term = str(c)
                else:
                    var = "x" if j == 1 else f"x^{{{j}}}"
                    term = "+ " + (var if c == 1 else f"{c}{var}")
                cells += [term, r"\,"]
            out.append(" & ".join((cells + pad)[:width]) + r" \\")
            if k <= self.n:
                # the diagonal out of term j+1 sits between terms j and j+1;
                # the top term has no vertical arrow
                arrows = []
                for j in range(len(row)):
                    v, _ = self.arrows[(k, j)]
                    arrows.append(rf"\downarrow_{{{v}}}" if j < row.degree else r"\,")
                    nxt = self.arrows.get((k, j + 1))
                    arrows.append(rf"\swarrow_{{{nxt[1]}}}" if nxt else r"\,")
                out.append(" & ".join((arrows + pad)[:width]) + r" \\")
        out.append(r"\end{array}")
        return "\n".join(out)


def arrow_table(n: int) -> ArrowTable:
    """Fill arrow labels right to left from the coefficients alone."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = tuple(p_poly(n, k) for k in range(2, n + 2))
    arrows: dict[tuple[int, int], tuple[int, int]] = {}
    for k in range(2, n + 1):
        row = rows[k - 2]
        top = row.degree
        diag_above = 0  # diagonal label out of term j+1
        for j in range(top, -1, -1):
            if j == top:
                vertical, diagonal = 0, row[j]
            else:
                vertical = (k - 1) * diag_above
                diagonal = row[j] - vertical
            if j == 0 and diagonal != 0:
                raise ArithmeticError(f"inconsistent constant term in row k={k}")
            arrows[(k, j)] = (vertical, diagonal)
            diag_above = diagonal
    return ArrowTable(n, rows, arrows)
