import json

import pytest

from mmp import oracle, poly
from mmp.poly import IntPolynomial


def test_histograms():
    assert oracle.distribution_histogram(4, 2) == [6, 11, 6, 1]
    assert oracle.distribution_histogram(4, 2, primed=False) == [17, 6, 1]
    assert oracle.distribution_histogram(5, 4) == [72, 42, 6]
    for k in range(2, 7):
        assert oracle.distribution_histogram(k - 1, k) == poly.p_poly(k - 1, k)


def test_sharded_equals_serial():
    for n in range(1, 8):
        for k in (2, 3):
            assert oracle.distribution_histogram(n, k, sharded=True) == oracle.distribution_histogram(n, k)


def test_bound_enforced():
    with pytest.raises(ValueError, match="bound"):
        oracle.distribution_histogram(8, 2, max_n=7)
    assert oracle.distribution_histogram(8, 2, max_n=8)(1) == 40320


def test_joint_counts():
    m = oracle.joint_m_counts(5, 2)
    assert m[3][2] == 9 and m[4][3] == 1
    assert oracle.joint_m_counts(5, 3)[0][0] == 48
    for n in range(2, 7):
        for k in range(2, n + 2):
            m = oracle.joint_m_counts(n, k)
            assert all(v == 0 for i, row in enumerate(m) for j, v in enumerate(row) if j not in (i, i - 1))


def test_joint_counts_match_arrow_table():
    for n in range(2, 8):
        t = poly.arrow_table(n)
        for k in range(2, min(n, 5) + 1):
            m = oracle.joint_m_counts(n, k)
            for j in range(len(t.row(k))):
                assert t.arrows[(k, j)] == (m[j][j], m[j][j - 1] if j else 0)


def test_r_stirling_brute():
    assert oracle.r_stirling_brute(7, 5, 3) == 119
    assert oracle.r_stirling_brute(6, 6, 2) == 1
    assert oracle.r_stirling_brute(5, 3, 2) == 26


def test_border_histogram():
    assert oracle.border_count_histogram(4) == {0: 23, 1: 1}
    assert oracle.border_count_histogram(3) == {0: 6}
    h = oracle.border_count_histogram(6)
    for k in range(1, 6):
        assert h.get(k, 0) == oracle.once_almost_count(5, k)


def test_default_suite_passes():
    report = oracle.run_suite(max_n=6)
    assert report.passed, report.summary()
    assert {r.id.split("/")[0] for r in report.records} == set(oracle.SUITES)


def test_trivial_config():
    report = oracle.run_suite(max_n=1, suites=("distributions",))
    assert report.passed and len(report.records) >= 1


def test_corrupted_formula_is_caught():
    def bad_p(n, k):
        p = poly.p_poly(n, k)
        return p + IntPolynomial([1]) if (n, k) == (5, 3) else p

    report = oracle.run_suite(max_n=5, suites=("distributions",), formulas={"p_poly": bad_p})
    assert not report.passed
    ids = {r.id for r in report.failures}
    assert "distributions/n=5,k=3/primed" in ids
    assert all("n=5,k=3" in i or "n=6" in i for i in ids)


def test_crashing_formula_is_a_failure_not_an_exception():
    def boom(n, k, j):
        raise ArithmeticError("nope")

    report = oracle.run_suite(suites=("lincomb",), arith_max=6, formulas={"c_nkj_via_harmonic": boom})
    assert not report.passed
    assert report.failures[0].actual.startswith("error:")


def test_unknown_suite():
    with pytest.raises(ValueError):
        oracle.run_suite(suites=("nope",))


def test_report_json_is_deterministic():
    a = oracle.run_suite(max_n=4, arith_max=8).to_json()
    b = oracle.run_suite(max_n=4, arith_max=8).to_json()
    assert a == b
    d = json.loads(a)
    ids = [r["id"] for r in d["records"]]
    assert ids == sorted(ids)
    assert "elapsed" not in d["records"][0]

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert not isinstance(x, (int, float)) or isinstance(x, bool)

    walk(d)
    assert "elapsed" in json.loads(oracle.run_suite(max_n=2, suites=("k2",)).to_json(timing=True))["records"][0]


def test_polynomial_actual_is_not_evaluated():
    report = oracle.VerificationReport(("x",))
    rec = oracle._Recorder(report, "x")
    assert rec.check("poly", IntPolynomial([1, 1]), IntPolynomial([1, 1]))
