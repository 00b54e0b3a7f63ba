import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as hs

from mmp.pattern import border_p_count, classify, larger_before_max, mmp_count, mmp_count_primed, mmp_matches
from mmp.perm import enumerate_sn, left_to_right_maxima, reduce

perms = hs.integers(1, 9).flatmap(lambda n: hs.permutations(range(1, n + 1)))


def test_examples():
    r = mmp_matches((5, 6, 4, 1, 8, 7, 3, 2), 2)
    assert r.matched_positions == (1,) and r.count_unprimed == 1
    r = mmp_matches((1, 3, 5, 4, 8, 7, 6, 2), 4)
    assert (r.count_primed, r.count_unprimed) == (2, 1)
    assert mmp_count_primed((4, 1, 2, 3), 3) == 0
    assert mmp_count_primed((2, 3, 4, 1), 3) == 1


def test_k_below_two_rejected():
    with pytest.raises(ValueError):
        mmp_matches((1, 2), 1)
    with pytest.raises(ValueError):
        classify((1, 2), 0)


def test_distribution_s4():
    primed = [0] * 4
    unprimed = [0] * 4
    for p in enumerate_sn(4):
        primed[mmp_count_primed(p, 2)] += 1
        unprimed[mmp_count(p, 2)] += 1
    assert primed == [6, 11, 6, 1]
    assert unprimed[0] == 17


def test_classify():
    assert str(classify((4, 1, 2, 3), 2)) == "cannot_match"
    assert str(classify((1, 4, 2, 3), 2)) == "almost_match"
    assert str(classify((2, 3, 4, 1), 2)) == "matches(1)"
    assert classify((2, 3, 4, 1), 2).j == 1


def test_larger_before_max():
    assert larger_before_max((2, 3, 4, 1), 0) == 2
    assert larger_before_max((2, 3, 4, 1), 1) == 1


@given(perms, hs.integers(2, 10))
def test_report_invariants(w, k):
    r = mmp_matches(w, k)
    n = len(w)
    ltr = left_to_right_maxima(w)
    assert r.count_primed == r.count_unprimed + int(r.zero_matches)
    assert r.matched_positions == tuple(ltr[: r.count_unprimed])
    assert r.count_unprimed <= max(0, n - k)
    if r.count_unprimed:
        assert r.zero_matches
    assert (r.count_primed == 0) == (w.index(n) + 1 <= k - 1)
    nxt = mmp_count_primed(w, k + 1)
    if r.count_primed == 0:
        assert nxt == 0
    else:
        assert nxt in (r.count_primed, r.count_primed - 1)


@given(perms)
def test_k2_pseudocycles(w):
    p = len(left_to_right_maxima(w))
    if p > 2:
        assert mmp_count(w, 2) == p - 2


def test_border_examples():
    assert border_p_count((2, 1, 3, 4)) == 1
    assert border_p_count((2, 1, 3)) == 0
    assert border_p_count((3, 1, 4, 2, 5)) == 1
    assert border_p_count((1, 2, 3, 4)) == 0
    assert border_p_count((2, 1, 4, 3)) == 0


def _border_by_quadruples(w):
    # occurrences of 2134 whose points touch all four borders: first position,
    # value 1, last position, value n
    n = len(w)
    count = 0
    for quad in itertools.combinations(range(n), 4):
        vals = [w[t] for t in quad]
        if reduce(vals) != (2, 1, 3, 4):
            continue
        if quad[0] == 0 and vals[1] == 1 and quad[3] == n - 1 and vals[3] == n:
            count += 1
    return count


def test_border_matches_definition():
    for n in range(1, 7):
        for p in enumerate_sn(n):
            assert border_p_count(p) == _border_by_quadruples(p)
