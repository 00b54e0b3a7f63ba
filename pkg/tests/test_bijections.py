from collections import Counter
from math import factorial

import pytest

from mmp import bijections as bj
from mmp.pattern import border_p_count, mmp_count_primed
from mmp.perm import Permutation, enumerate_sn, parse_permutation


def P(text):
    return parse_permutation(text)


def test_rstir_forward_examples():
    f = bj.rstir_forward(P("13625748"), 4)
    assert f.case_tag == "case2" and f.j == 2
    assert f.base == P("13548762") and P("13548762") in f.images
    assert bj.rstir_forward(P("13647582"), 4).base == P("13458267")
    assert len(f.images) == 6 == len(set(f.images))


def test_rstir_case1_prefix():
    f = bj.rstir_forward(P("2341"), 4)
    assert f.case_tag == "case1" and f.j == 0
    assert set(f.images) == {Permutation(p + (1,)) for p in [(2, 3, 4), (2, 4, 3), (3, 2, 4), (3, 4, 2), (4, 2, 3), (4, 3, 2)]}
    assert all(mmp_count_primed(phi, 4) == 0 for phi in f.images)


def test_rstir_inverse_round_trips_forward_example():
    assert bj.rstir_inverse(P("13548762"), 4) == P("13625748")
    assert bj.rstir_inverse(P("13458267"), 4) == P("13647582")


def test_rstir_inverse_of_1324756():
    # 1452637 has no large followers, so its fiber only rearranges 4, 5, 6
    sigma = bj.rstir_inverse(P("1324756"), 4)
    assert sigma == P("1253647")
    assert P("1324756") in bj.rstir_forward(sigma, 4).images
    assert P("1324756") not in bj.rstir_forward(P("1452637"), 4).images


def test_rstir_k2_is_identity():
    for p in enumerate_sn(5):
        assert bj.rstir_inverse(p, 2) == p
        assert bj.rstir_forward(p, 2).images == (p,)


def test_rstir_domain():
    with pytest.raises(bj.DomainError):
        bj.rstir_forward(P("4123"), 3)  # 3 is not a left-to-right maximum
    with pytest.raises(bj.DomainError):
        bj.rstir_forward(P("12"), 4)
    with pytest.raises(bj.DomainError):
        bj.rstir_inverse(P("12"), 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_rstir_partition(n):
    for k in range(2, min(n + 1, 5) + 1):
        cover = Counter()
        for sigma in enumerate_sn(n):
            try:
                f = bj.rstir_forward(sigma, k)
            except bj.DomainError:
                continue
            assert len(f.images) == factorial(k - 1)
            for phi in f.images:
                assert mmp_count_primed(phi, k) == f.j
                assert bj.rstir_inverse(phi, k) == sigma
            cover.update(f.images)
        assert len(cover) == factorial(n) and set(cover.values()) == {1}


def test_literal_threshold_overlaps():
    # measuring large followers against the (j-1)-st maximum sends two
    # different sigma to bases whose rearrangement classes coincide
    _, a = bj.rstir_literal_threshold_base(P("14325"), 3)
    _, b = bj.rstir_literal_threshold_base(P("24315"), 3)
    assert (a, b) == (P("12543"), P("21543"))
    assert sorted(a[:2]) == sorted(b[:2]) and a[2:] == b[2:]
    # the corrected threshold keeps them apart
    fa = set(bj.rstir_forward(P("14325"), 3).images)
    fb = set(bj.rstir_forward(P("24315"), 3).images)
    assert not fa & fb


def test_main2_examples():
    w = bj.main2_forward(P("2341"), 2, 1)
    assert w.pi_q == P("3241")
    assert bj.main2_inverse(P("3241"), 2) == (P("2341"), 1)
    with pytest.raises(bj.DomainError):
        bj.main2_forward(P("2341"), 2, 2)
    with pytest.raises(bj.DomainError):
        bj.main2_inverse(P("4321"), 2)


@pytest.mark.parametrize("n", range(2, 8))
def test_main2_structure(n):
    for k in range(2, n + 1):
        targets = Counter()
        for sigma in enumerate_sn(n):
            try:
                ws = [bj.main2_forward(sigma, k, q) for q in range(1, k)]
            except bj.DomainError:
                continue
            j = mmp_count_primed(sigma, k)
            assert len({w.pi_q for w in ws}) == k - 1
            for w in ws:
                assert mmp_count_primed(w.pi_q, k) == j - 1 == mmp_count_primed(w.pi_q, k + 1)
                assert bj.main2_inverse(w.pi_q, k) == (sigma, w.q)
                targets[w.pi_q] += 1
        # each target is hit by exactly one (sigma, q) pair
        assert set(targets.values()) <= {1}
        want = sum(1 for p in enumerate_sn(n) if mmp_count_primed(p, k) == mmp_count_primed(p, k + 1) >= 1)
        assert len(targets) == want


def test_delete_map_examples():
    assert bj.thm_main_delete_map(P("1342"), 2) == P("231")
    assert mmp_count_primed(P("231"), 2) == 1
    tau = bj.thm_main_delete_map(P("2143"), 3)
    assert bj.delete_map_branch(P("2143"), 3) == "swap" and mmp_count_primed(tau, 3) == 0
    with pytest.raises(bj.DomainError):
        bj.thm_main_delete_map(P("4123"), 2)


def test_delete_map_reproduces_recurrence_at_4():
    n, k = 4, 2
    c3 = [sum(1 for p in enumerate_sn(3) if mmp_count_primed(p, k) == j) for j in range(5)]
    c4 = [sum(1 for p in enumerate_sn(4) if mmp_count_primed(p, k) == j) for j in range(5)]
    for j in range(1, 5):
        assert c4[j] == (n - 1) * c3[j] + c3[j - 1]
    branch = Counter()
    for p in enumerate_sn(4):
        j = mmp_count_primed(p, k)
        if j:
            branch[(bj.delete_map_branch(p, k) == "delete", j)] += 1
    for j in range(1, 5):
        assert branch[(True, j)] == (n - 1) * c3[j]
        assert branch[(False, j)] == c3[j - 1]


@pytest.mark.parametrize("n", range(2, 8))
def test_delete_map_fibers(n):
    for k in range(2, n + 1):
        pre = Counter()
        for p in enumerate_sn(n):
            if mmp_count_primed(p, k) >= 1:
                pre[(bj.delete_map_branch(p, k) == "delete", bj.thm_main_delete_map(p, k))] += 1
        assert all(v == (n - 1 if d else 1) for (d, _), v in pre.items())
        assert sum(1 for d, _ in pre if not d) == factorial(n - 1)


def test_border_examples():
    assert bj.border_to_mmp(P("32145")) == P("2341")
    assert bj.border_to_mmp(P("2134")) == P("123")
    assert bj.border_from_mmp(P("2341"), 1) == P("32145")
    assert bj.border_from_mmp(P("123"), 1) == P("2134")
    with pytest.raises(bj.DomainError):
        bj.border_to_mmp(P("2143"))
    with pytest.raises(bj.DomainError):
        bj.border_from_mmp(P("4321"), 1)


def test_border_round_trip_s6():
    seen = set()
    for sigma in enumerate_sn(6):
        c = border_p_count(sigma)
        if c:
            phi = bj.border_to_mmp(sigma)
            assert mmp_count_primed(phi, c + 1) == 2 and mmp_count_primed(phi, c + 2) == 1
            assert bj.border_from_mmp(phi, c) == sigma
            seen.add((c, phi))
    assert len(seen) == sum(1 for s in enumerate_sn(6) if border_p_count(s))
