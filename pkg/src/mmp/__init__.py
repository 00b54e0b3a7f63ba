"""Exact computations for the quadrant marked mesh pattern MMP^k."""
from .pattern import MatchReport, border_p_count, classify, mmp_count, mmp_count_primed, mmp_matches
from .perm import Permutation, enumerate_sn, left_to_right_maxima, parse_permutation, reduce
from .poly import IntPolynomial, arrow_table, coefficient, p_poly, r_poly

__all__ = [
    "IntPolynomial",
    "MatchReport",
    "Permutation",
    "arrow_table",
    "border_p_count",
    "classify",
    "coefficient",
    "enumerate_sn",
    "left_to_right_maxima",
    "mmp_count",
    "mmp_count_primed",
    "mmp_matches",
    "p_poly",
    "parse_permutation",
    "r_poly",
    "reduce",
]
