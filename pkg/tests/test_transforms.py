from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sparsecodes import CLOSED, OPEN, Arrangement, Disk, Empty, Interval, Offset, Polygon, Segment, parse_code
from sparsecodes import kernel
from sparsecodes.geometry import core_info
from sparsecodes.transforms import (
    NotTwoSparseArrangement,
    choose_inflate_epsilon,
    choose_trim_epsilon,
    closed_to_open,
    inflate,
    open_to_closed,
    trim,
    trim_arrangement,
)
from sparsecodes.verify import compute_code

from strategies import disks, intervals, polygons, two_sparse

SQ4 = Polygon(((0, 0), (4, 0), (4, 4), (0, 4)))


def test_trim_examples():
    assert trim(SQ4, 1) == Polygon(((1, 1), (3, 1), (3, 3), (1, 3)))
    assert trim(Disk((0, 0), 16), 3) == Disk((0, 0), 1)
    assert trim(Segment((0, 0), (1, 1)), Fraction(1, 10)) == Empty(2)
    assert trim(Interval(0, 1), Fraction(1, 2)) == Empty(1)
    assert trim(Offset(SQ4, 2), 1) == Offset(SQ4, 1)
    assert trim(Offset(SQ4, 1), 2) == Polygon(((1, 1), (3, 1), (3, 3), (1, 3)))


def test_trim_irrational_radius_band():
    d = trim(Disk((0, 0), 2), Fraction(1, 10))
    r = float(d.radius_sq) ** 0.5
    assert 2 ** 0.5 - 0.1 * 1.001 <= r <= 2 ** 0.5 - 0.1


@given(polygons(), st.fractions(min_value=Fraction(1, 64), max_value=2, max_denominator=64))
def test_trim_is_inside_and_keeps_deep_points(X, eps):
    T = trim(X, eps)
    if T.is_empty:
        return
    assert kernel.contains(X, T)
    # every vertex of the trimmed body is at least eps/2 deep in X
    inf = core_info(X.core)
    for v in core_info(T.core).points:
        for a, b in inf.facets:
            depth = (b - sum(x * y for x, y in zip(a, v)))
            assert depth * depth >= (eps / 2) ** 2 * sum(x * x for x in a)


@given(st.one_of(polygons(), disks()), st.fractions(min_value=Fraction(1, 64), max_value=2, max_denominator=64))
def test_inflate_contains_and_reaches(X, eps):
    Y = inflate(X, eps)
    assert kernel.contains(Y, X)
    # a point at distance < eps from X lies in the inflated body
    inf = core_info(X.core)
    p = inf.points[0]
    q = (p[0] + kernel.sqrt_lower(X.rho_sq, 30) + eps * Fraction(99, 100), p[1]) if X.rho_sq else None
    if q is not None:
        assert kernel.member(q, Y)


def test_choose_trim_epsilon_values():
    sq = Polygon(((0, 0), (1, 0), (1, 1), (0, 1)))
    assert choose_trim_epsilon(Arrangement(2, OPEN, (sq,))) == Fraction(1, 4)


def test_inflate_plan_respects_nesting():
    big = Polygon(((0, 0), (8, 0), (8, 8), (0, 8)))
    small = Polygon(((2, 2), (6, 2), (6, 6), (2, 6)))
    plan = choose_inflate_epsilon(Arrangement(2, CLOSED, (big, small)))
    assert plan.eps[2] <= plan.eps[1] / 2
    assert plan.uniform <= plan.eps[2]


def test_two_sparse_required():
    arr = Arrangement(2, CLOSED, tuple(Disk((x, 0), 4) for x in (0, 1, 2)))
    with pytest.raises(NotTwoSparseArrangement):
        closed_to_open(arr)


@given(two_sparse(st.one_of(polygons(), disks()), OPEN, max_size=4))
def test_open_closed_roundtrip_keeps_code(arr):
    C = compute_code(arr)
    closed = open_to_closed(arr)
    assert compute_code(closed) == C
    assert compute_code(closed_to_open(closed)) == C
    assert compute_code(trim_arrangement(arr, choose_trim_epsilon(arr))) == C


@given(two_sparse(intervals(), CLOSED, max_size=5, dim=1))
def test_closed_intervals_inflate_keeps_code(arr):
    assert compute_code(closed_to_open(arr)) == compute_code(arr)


def test_fig1_roundtrip():
    arr = Arrangement(1, OPEN, (Interval(0, 2), Interval(1, 5), Interval(3, 4)))
    C = parse_code("000,100,010,110,011")
    assert compute_code(open_to_closed(arr)) == C
    assert compute_code(closed_to_open(open_to_closed(arr))) == C
