"""Exhaustive ground truth and the identity-by-identity verification suite.

Enumeration side only ever uses the definitions (``pattern`` and the batch
kernels); the closed forms under test are looked up in a formula table so a
test can swap one out and watch the suite catch it.
"""
from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from types import FunctionType
from typing import Callable

import numpy as np

from . import _kernels as K
from . import bijections as bj
from . import poly
from . import stirling as st
from .pattern import border_p_count, mmp_count_primed, mmp_matches
from .perm import check_bound, enumerate_sn
from .poly import IntPolynomial


# Enumeration oracle

@lru_cache(maxsize=4)
def _block(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = K.all_permutations(n)
    return perms, K.match_profile(perms)


def _histogram(values: np.ndarray) -> IntPolynomial:
    return IntPolynomial(np.bincount(values.astype(np.int64)).tolist())


def distribution_histogram(n: int, k: int, primed: bool = True, max_n: int | None = None,
                           sharded: bool = False) -> IntPolynomial:
    """Histogram of ``mmp^{k'}`` (or ``mmp^k``) over S_n as a polynomial."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 1:
        raise ValueError("n must be at least 1")
    check_bound(n, max_n)
    count = K.primed_counts if primed else K.unprimed_counts
    if not sharded:
        return _histogram(count(_block(n)[1], k))
    total = IntPolynomial()
    for first in range(1, n + 1):
        shard = K.all_permutations(n, first)
        total = total + _histogram(count(K.match_profile(shard), k))
    return total


def joint_m_counts(n: int, k: int, max_n: int | None = None) -> list[list[int]]:
    """``m[i][j]`` = number of sigma with ``mmp^{k'} = i`` and ``mmp^{(k+1)'} = j``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    check_bound(n, max_n)
    prof = _block(n)[1]
    a, b = K.primed_counts(prof, k), K.primed_counts(prof, k + 1)
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    np.add.at(m, (a, b), 1)
    return m.tolist()


def r_stirling_brute(n: int, m: int, r: int, max_n: int | None = None) -> int:
    """Permutations with exactly m left-to-right maxima, n..n-r+1 among them."""
    if r < 1 or n < r:
        raise ValueError("need 1 <= r <= n")
    check_bound(n, max_n)
    perms = _block(n)[0]
    hit = (K.ltr_counts(perms) == m) & K.top_maxima(perms, r)
    return int(hit.sum())


def border_count_histogram(n: int, max_n: int | None = None) -> dict[int, int]:
    check_bound(n, max_n)
    c = np.bincount(K.border_counts(_block(n)[0]))
    return {i: int(v) for i, v in enumerate(c) if v}


def once_almost_count(n: int, k: int, max_n: int | None = None) -> int:
    """sigma in S_n with ``mmp^{(k+1)'} = 2`` and ``mmp^{(k+2)'} = 1``."""
    check_bound(n, max_n)
    prof = _block(n)[1]
    return int(((K.primed_counts(prof, k + 1) == 2) & (K.primed_counts(prof, k + 2) == 1)).sum())


# Reports

def _jsonable(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, IntPolynomial):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class CheckRecord:
    id: str
    params: dict
    expected: object
    actual: object
    passed: bool
    elapsed: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "id": self.id,
            "params": _jsonable(self.params),
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "passed": self.passed,
        }
        if timing:
            d["elapsed"] = f"{self.elapsed:.6f}"
        return d


@dataclass
class VerificationReport:
    suites: tuple[str, ...]
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def by_suite(self, name: str) -> list[CheckRecord]:
        return [r for r in self.records if r.id.split("/", 1)[0] == name]

    def to_dict(self, timing: bool = False) -> dict:
        recs = sorted(self.records, key=lambda r: r.id)
        return {
            "suites": list(self.suites),
            "passed": self.passed,
            "checks": str(len(recs)),
            "failed": str(len(self.failures)),
            "records": [r.to_dict(timing) for r in recs],
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def summary(self) -> str:
        lines = []
        for name in self.suites:
            recs = self.by_suite(name)
            bad = sum(not r.passed for r in recs)
            lines.append(f"{name:<13} {len(recs) - bad}/{len(recs)} passed")
        for r in sorted(self.failures, key=lambda r: r.id):
            lines.append(f"FAIL {r.id}: expected {_jsonable(r.expected)}, got {_jsonable(r.actual)}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


class _Recorder:
    def __init__(self, report: VerificationReport, suite: str):
        self.report = report
        self.suite = suite

    def check(self, name: str, expected, actual: Callable | object, **params) -> bool:
        t0 = time.perf_counter()
        try:
            # polynomials are callable too, so only plain functions are deferred
            value = actual() if isinstance(actual, FunctionType) else actual
        except (ArithmeticError, ValueError) as exc:
            value = f"error: {exc}"
        ok = value == expected
        self.report.records.append(
            CheckRecord(f"{self.suite}/{name}", params, expected, value, bool(ok), time.perf_counter() - t0)
        )
        return bool(ok)


# Verification suites

FORMULAS: dict[str, Callable] = {
    "p_poly": poly.p_poly,
    "p_poly_recurrence": poly.p_poly_recurrence,
    "r_poly": poly.r_poly,
    "coefficient": poly.coefficient,
    "p3_closed_form": poly.p3_closed_form,
    "almost_match_closed_form": poly.almost_match_closed_form,
    "c_nkj_via_harmonic": poly.c_nkj_via_harmonic,
    "c_nkj_via_neg_stirling": poly.c_nkj_via_neg_stirling,
    "arrow_table": poly.arrow_table,
    "stirling1_unsigned": st.stirling1_unsigned,
    "r_stirling": st.r_stirling,
    "r_stirling_via_classical": st.r_stirling_via_classical,
    "r_stirling_cross_recurrence": st.r_stirling_cross_recurrence,
    "r_stirling_via_harmonic": st.r_stirling_via_harmonic,
    "r_stirling_via_neg_stirling": st.r_stirling_via_neg_stirling,
    "position_recurrence": st.position_recurrence,
    "harmonic_nested": st.harmonic_nested,
    "almost_match_constant": st.almost_match_constant,
}


@dataclass(frozen=True)
class SuiteConfig:
    max_n: int = 7
    arith_max: int = 20
    bijection_max: int = 6
    suites: tuple[str, ...] | None = None
    formulas: dict | None = None


def _distributions(rec, cfg, f):
    for n in range(1, cfg.max_n + 1):
        for k in range(2, n + 2):
            hp = distribution_histogram(n, k, True, cfg.max_n)
            rec.check(f"n={n},k={k}/primed", hp, lambda: f["p_poly"](n, k), n=n, k=k)
            rec.check(f"n={n},k={k}/unprimed", distribution_histogram(n, k, False, cfg.max_n),
                      lambda: f["r_poly"](n, k), n=n, k=k)
            rec.check(f"n={n},k={k}/recurrence", hp, lambda: f["p_poly_recurrence"](n, k), n=n, k=k)
            if n >= k:
                # (x+n-1) P_{n-1} = P_n
                rec.check(f"n={n},k={k}/step", hp,
                          lambda: IntPolynomial([n - 1, 1]) * f["p_poly"](n - 1, k), n=n, k=k)
            rec.check(f"n={n},k={k}/mass", factorial(n), lambda: f["p_poly"](n, k)(1), n=n, k=k)
        rec.check(f"n={n}/sharded", distribution_histogram(n, 2, True, cfg.max_n),
                  lambda: distribution_histogram(n, 2, True, cfg.max_n, sharded=True), n=n)


def _k2(rec, cfg, f):
    for n in range(2, cfg.max_n + 1):
        r = distribution_histogram(n, 2, False, cfg.max_n)
        p = distribution_histogram(n, 2, True, cfg.max_n)
        for s in range(1, n - 1):
            rec.check(f"n={n}/s={s}", r[s], lambda: f["stirling1_unsigned"](n, s + 2), n=n, s=s)
        rec.check(f"n={n}/cannot", p[0], factorial(n - 1), n=n)
        rec.check(f"n={n}/almost", p[1], lambda: f["stirling1_unsigned"](n, 2), n=n)


def _rstir(rec, cfg, f):
    for n in range(1, cfg.max_n + 1):
        for k in range(2, min(4, n + 1) + 1):
            p = distribution_histogram(n, k, True, cfg.max_n)
            for j in range(0, n - k + 2):
                brute = r_stirling_brute(n, j + k - 1, k - 1, cfg.max_n)
                rec.check(f"n={n},k={k},j={j}/coefficient", p[j], factorial(k - 1) * brute, n=n, k=k, j=j)
                rec.check(f"n={n},k={k},j={j}/r_stirling", brute,
                          lambda: f["r_stirling"](n, j + k - 1, k - 1), n=n, k=k, j=j)
                rec.check(f"n={n},k={k},j={j}/formula", p[j], lambda: f["coefficient"](n, k, j), n=n, k=k, j=j)
    for n in range(1, min(cfg.max_n, cfg.bijection_max) + 1):
        for k in range(2, min(4, n + 1) + 1):
            cover = Counter()
            good_j = inverse_ok = True
            for sigma in enumerate_sn(n):
                try:
                    fib = bj.rstir_forward(sigma, k)
                except bj.DomainError:
                    continue
                cover.update(fib.images)
                good_j &= len(fib.images) == factorial(k - 1)
                good_j &= all(mmp_count_primed(phi, k) == fib.j for phi in fib.images)
                inverse_ok &= all(bj.rstir_inverse(phi, k) == sigma for phi in fib.images)
            partition = len(cover) == factorial(n) and set(cover.values()) == {1}
            rec.check(f"n={n},k={k}/partition", True, partition, n=n, k=k)
            rec.check(f"n={n},k={k}/fiber_stat", True, good_j, n=n, k=k)
            rec.check(f"n={n},k={k}/inverse", True, inverse_ok, n=n, k=k)


def _krans(rec, cfg, f):
    for n in range(2, cfg.arith_max + 1):
        for k in range(2, n + 1):
            for j in range(0, n - k + 2):
                rec.check(f"n={n},k={k},j={j}", st.r_stirling(n, j + k - 1, k - 1),
                          lambda: f["r_stirling_via_classical"](n, j, k), n=n, k=k, j=j)


def _main2(rec, cfg, f):
    for n in range(2, cfg.max_n + 1):
        table = f["arrow_table"](n)
        for k in range(2, n + 1):
            m = joint_m_counts(n, k, cfg.max_n)
            p_next = distribution_histogram(n, k + 1, True, cfg.max_n)
            for j in range(1, n - k + 2):
                rec.check(f"n={n},k={k},j={j}/ratio", m[j - 1][j - 1], (k - 1) * m[j][j - 1], n=n, k=k, j=j)
                rec.check(f"n={n},k={k},j={j}/next_row", p_next[j - 1], k * m[j][j - 1], n=n, k=k, j=j)
            for j in range(0, n - k + 2):
                rec.check(f"n={n},k={k},j={j}/arrows", (m[j][j], m[j][j - 1] if j else 0),
                          lambda: table.arrows[(k, j)], n=n, k=k, j=j)
    for n in range(2, min(cfg.max_n, cfg.bijection_max) + 1):
        for k in range(2, n + 1):
            targets = Counter()
            ok = True
            for sigma in enumerate_sn(n):
                try:
                    ws = [bj.main2_forward(sigma, k, q) for q in range(1, k)]
                except bj.DomainError:
                    continue
                for w in ws:
                    j = mmp_count_primed(sigma, k)
                    ok &= mmp_count_primed(w.pi_q, k) == j - 1 == mmp_count_primed(w.pi_q, k + 1)
                    ok &= bj.main2_inverse(w.pi_q, k) == (sigma, w.q)
                    targets[w.pi_q] += 1
            m = joint_m_counts(n, k, cfg.max_n)
            expected = sum(m[i][i] for i in range(1, n + 1))
            rec.check(f"n={n},k={k}/maps", True, ok, n=n, k=k)
            rec.check(f"n={n},k={k}/image", expected, len(targets), n=n, k=k)


def _fixed_n(rec, cfg, f):
    for n in range(2, cfg.arith_max + 1):
        for k in range(2, n + 1):
            for j in range(0, n - k + 1):
                total = sum(k * (1 - k) ** (i - j - 1) * f["coefficient"](n, k, i) for i in range(j + 1, n - k + 2))
                rec.check(f"n={n},k={k},j={j}", poly.coefficient(n, k + 1, j), total, n=n, k=k, j=j)


def _sumform(rec, cfg, f):
    for n in range(2, cfg.arith_max + 1):
        for k in range(2, n + 1):
            for j in range(0, n - k + 1):
                rec.check(f"n={n},k={k},j={j}", st.r_stirling(n, j + k, k),
                          lambda: f["r_stirling_cross_recurrence"](n, j, k), n=n, k=k, j=j)


def _lincomb(rec, cfg, f):
    for n in range(2, cfg.arith_max + 1):
        rec.check(f"k3/n={n}", poly.p_poly(n, 3), lambda: f["p3_closed_form"](n), n=n)
    for k, a in zip(range(3, 7), ((2, 1), (9, 2), (44, 6), (250, 24))):
        from fractions import Fraction
        rec.check(f"constant/k={k}", Fraction(*a), lambda: f["almost_match_constant"](k), k=k)
    for k in range(3, 11):
        for n in range(k - 1, cfg.arith_max + 1):
            rec.check(f"almost/n={n},k={k}", poly.coefficient(n, k, 1),
                      lambda: f["almost_match_closed_form"](n, k), n=n, k=k)
            for j in range(1, n - k + 2):
                exact = poly.coefficient(n, k, j)
                rec.check(f"harmonic/n={n},k={k},j={j}", exact, lambda: f["c_nkj_via_harmonic"](n, k, j), n=n, k=k, j=j)
                rec.check(f"negative/n={n},k={k},j={j}", exact,
                          lambda: f["c_nkj_via_neg_stirling"](n, k, j), n=n, k=k, j=j)


def _harmonic(rec, cfg, f):
    N = cfg.arith_max
    for n in range(1, N + 1):
        for m in range(2, n + 1):
            for r in range(1, m):
                exact = st.r_stirling(n, m, r)
                rec.check(f"nested/n={n},m={m},r={r}", exact, lambda: f["r_stirling_via_harmonic"](n, m, r), n=n, m=m, r=r)
                if r >= 2:
                    rec.check(f"position/n={n},m={m},r={r}", exact,
                              lambda: f["position_recurrence"](n, m, r), n=n, m=m, r=r)
                    rec.check(f"negative/n={n},m={m},r={r}", exact,
                              lambda: f["r_stirling_via_neg_stirling"](n, m - r, r), n=n, m=m, r=r)
        for j in range(1, n):
            rec.check(f"harm1/n={n},j={j}", st.stirling1_unsigned(n, j + 1),
                      lambda: factorial(n - 1) * f["harmonic_nested"](n - 1, j, 1), n=n, j=j)
    for k in range(3, 11):
        for n in range(k, N + 1):
            for j in range(1, n - k + 2):
                rec.check(f"loeb/n={n},k={k},j={j}", f["c_nkj_via_harmonic"](n, k, j),
                          lambda: f["c_nkj_via_neg_stirling"](n, k, j), n=n, k=k, j=j)


def _border(rec, cfg, f):
    for n in range(2, cfg.max_n + 1):
        hist = border_count_histogram(n, cfg.max_n)
        for k in range(1, n):
            rec.check(f"n={n},k={k}/count", hist.get(k, 0), once_almost_count(n - 1, k, cfg.max_n), n=n, k=k)
    for n in range(2, min(cfg.max_n, cfg.bijection_max + 1) + 1):
        ok = True
        images = Counter()
        for sigma in enumerate_sn(n):
            c = border_p_count(sigma)
            if not c:
                continue
            phi = bj.border_to_mmp(sigma)
            ok &= mmp_count_primed(phi, c + 1) == 2 and mmp_count_primed(phi, c + 2) == 1
            ok &= bj.border_from_mmp(phi, c) == sigma
            images[(c, phi)] += 1
        rec.check(f"n={n}/round_trip", True, ok and set(images.values()) <= {1}, n=n)


def _bijections(rec, cfg, f):
    for n in range(2, min(cfg.max_n, cfg.bijection_max) + 1):
        for k in range(2, n + 1):
            branch = Counter()
            ok = True
            for sigma in enumerate_sn(n):
                j = mmp_count_primed(sigma, k)
                if j < 1:
                    continue
                tau = bj.thm_main_delete_map(sigma, k)
                b = bj.delete_map_branch(sigma, k)
                want = {"first": j - 1, "swap": 0, "delete": j}[b]
                ok &= mmp_count_primed(tau, k) == want
                branch[(b == "delete", tau)] += 1
            sizes = {(d, v) for (d, _), v in branch.items()}
            rec.check(f"n={n},k={k}/statistic", True, ok, n=n, k=k)
            rec.check(f"n={n},k={k}/fibers", True, sizes <= {(True, n - 1), (False, 1)}, n=n, k=k)
            covered = sum(1 for d, _ in branch if not d)
            rec.check(f"n={n},k={k}/cover", factorial(n - 1), covered, n=n, k=k)


def _structure(rec, cfg, f):
    for n in range(1, cfg.max_n + 1):
        perms, prof = _block(n)
        p = K.ltr_counts(perms)
        if n <= 5:
            # kernel against the scalar definition
            scalar = np.array([[mmp_matches(w, k).count_primed for k in range(2, n + 2)] for w in perms])
            kern = np.stack([K.primed_counts(prof, k) for k in range(2, n + 2)], axis=1)
            rec.check(f"n={n}/kernel", True, bool((scalar == kern).all()), n=n)
        for k in range(2, n + 2):
            un = K.unprimed_counts(prof, k)
            pr = K.primed_counts(prof, k)
            rec.check(f"n={n},k={k}/bound", True, bool((un <= max(0, n - k)).all()), n=n, k=k)
            cols = prof[:, 1:]
            hit = cols >= k - 1
            missed = (cols >= 0) & ~hit
            later = np.logical_or.accumulate(missed, axis=1)
            later = np.concatenate([np.zeros((len(cols), 1), dtype=bool), later[:, :-1]], axis=1)
            rec.check(f"n={n},k={k}/prefix", True, not bool((hit & later).any()), n=n, k=k)
            rec.check(f"n={n},k={k}/zero", True, bool(((pr == 0) == (prof[:, 0] <= k - 2)).all()), n=n, k=k)
            rec.check(f"n={n},k={k}/primed", True, bool(((un == 0) | (pr == un + 1)).all()), n=n, k=k)
            nxt = K.primed_counts(prof, k + 1)
            step = np.where(pr == 0, nxt == 0, (nxt == pr) | (nxt == pr - 1))
            rec.check(f"n={n},k={k}/second", True, bool(step.all()), n=n, k=k)
        many = p > 2
        rec.check(f"n={n}/pseudocycles", True, bool((K.unprimed_counts(prof, 2)[many] == p[many] - 2).all()), n=n)
        pc = Counter(p.tolist())
        rec.check(f"n={n}/stirling", [st.stirling1_unsigned(n, i) for i in range(1, n + 1)],
                  [pc.get(i, 0) for i in range(1, n + 1)], n=n)


SUITES: dict[str, Callable] = {
    "distributions": _distributions,
    "k2": _k2,
    "rstir": _rstir,
    "krans": _krans,
    "main2": _main2,
    "fixed_n": _fixed_n,
    "sumform": _sumform,
    "lincomb": _lincomb,
    "harmonic": _harmonic,
    "border": _border,
    "bijections": _bijections,
    "structure": _structure,
}


def run_suite(config: SuiteConfig | None = None, **overrides) -> VerificationReport:
    """Run the selected suites (all by default); failures land in the report."""
    cfg = config or SuiteConfig()
    if overrides:
        cfg = SuiteConfig(**{**cfg.__dict__, **overrides})
    names = tuple(cfg.suites) if cfg.suites else tuple(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites {unknown}; choose from {sorted(SUITES)}")
    formulas = {**FORMULAS, **(cfg.formulas or {})}
    report = VerificationReport(names)
    for name in names:
        SUITES[name](_Recorder(report, name), cfg, formulas)
    return report
