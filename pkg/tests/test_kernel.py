from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.optimize import linprog

from sparsecodes import CLOSED, OPEN, Arrangement, Disk, Interval, Offset, Polygon, Segment
from sparsecodes import kernel
from sparsecodes.kernel import (
    TYPE_A,
    TYPE_B,
    TYPE_C,
    NoFreeBoundary,
    boundary_free_point,
    contains,
    distance_sq,
    pair_intersects,
    relation,
    relation_matrix,
    triple_clearance,
    triple_intersects,
    witness_ball,
)

from strategies import disks, polygons, polytopes, segments, to_shapely

flat = st.one_of(polygons(), segments())


@given(flat, flat)
def test_closed_pairs_match_shapely(X, Y):
    assert pair_intersects(X, Y, CLOSED) == to_shapely(X).intersects(to_shapely(Y))


@given(polygons(), polygons())
def test_open_pairs_match_shapely(X, Y):
    area = to_shapely(X).intersection(to_shapely(Y)).area
    assert pair_intersects(X, Y, OPEN) == (area > 0)


@given(flat, polygons())
def test_containment_matches_shapely(Y, X):
    assert contains(X, Y) == to_shapely(X).covers(to_shapely(Y))


@given(flat, flat)
def test_distance_matches_shapely(X, Y):
    d = to_shapely(X).distance(to_shapely(Y))
    assert abs(float(distance_sq(X, Y)) - d * d) < 1e-9


@given(polygons(), polygons(), polygons())
def test_triples_match_shapely(X, Y, Z):
    sx, sy, sz = map(to_shapely, (X, Y, Z))
    inter = sx.intersection(sy)
    if inter.is_empty:
        assert not triple_intersects(X, Y, Z, CLOSED)
        return
    gap = inter.distance(sz)
    area = inter.intersection(sz).area
    if gap > 1e-7:
        assert not triple_intersects(X, Y, Z, CLOSED)
    elif area > 1e-7:
        assert triple_intersects(X, Y, Z, CLOSED)
        assert triple_intersects(X, Y, Z, OPEN)


@given(disks(), disks())
def test_disk_pairs_against_floats(X, Y):
    d = float(np.hypot(*(float(a - b) for a, b in zip(X.center, Y.center))))
    s = float(X.radius_sq) ** 0.5 + float(Y.radius_sq) ** 0.5
    if abs(d - s) > 1e-9:
        assert pair_intersects(X, Y, CLOSED) == (d < s)
        assert pair_intersects(X, Y, OPEN) == (d < s)


def test_tangent_disks():
    X, Y = Disk((0, 0), 1), Disk((2, 0), 1)
    assert pair_intersects(X, Y, CLOSED)
    assert not pair_intersects(X, Y, OPEN)
    # tangent with irrational distance: centres sqrt(8) apart, radii sqrt(2)
    X, Y = Disk((0, 0), 2), Disk((2, 2), 2)
    assert pair_intersects(X, Y, CLOSED) and not pair_intersects(X, Y, OPEN)


@given(disks(), disks())
def test_disk_containment_against_floats(X, Y):
    d = float(np.hypot(*(float(a - b) for a, b in zip(X.center, Y.center))))
    slack = float(X.radius_sq) ** 0.5 - float(Y.radius_sq) ** 0.5 - d
    if abs(slack) > 1e-9:
        assert contains(X, Y) == (slack > 0)


def _hulls_meet(P, Q, scale):
    """LP oracle: do the hulls meet after scaling P about its centroid?"""
    p = np.array([[float(c) for c in v] for v in P.vertices])
    q = np.array([[float(c) for c in v] for v in Q.vertices])
    p = p.mean(axis=0) + scale * (p - p.mean(axis=0))
    A_eq = np.vstack([np.hstack([p.T, -q.T]), np.hstack([np.ones(len(p)), np.zeros(len(q))]),
                      np.hstack([np.zeros(len(p)), np.ones(len(q))])])
    b_eq = np.concatenate([np.zeros(3), [1, 1]])
    return linprog(np.zeros(len(p) + len(q)), A_eq=A_eq, b_eq=b_eq, method="highs").status == 0


@given(polytopes(), polytopes())
def test_polytope_pairs_against_lp(P, Q):
    lo, hi = _hulls_meet(P, Q, 1 - 1e-6), _hulls_meet(P, Q, 1 + 1e-6)
    assume(lo == hi)
    assert pair_intersects(P, Q, CLOSED) == lo


def test_offset_pairs():
    s = Segment((0, 0), (4, 0))
    t = Segment((0, 3), (4, 3))
    assert not pair_intersects(Offset(s, 1), Offset(t, 1), CLOSED)
    assert pair_intersects(Offset(s, Fraction(3, 2)), Offset(t, Fraction(3, 2)), CLOSED)
    assert not pair_intersects(Offset(s, Fraction(3, 2)), Offset(t, Fraction(3, 2)), OPEN)
    assert contains(Offset(s, 2), Offset(Segment((1, 0), (3, 0)), 1))
    assert not contains(Offset(s, 1), Offset(Segment((1, 0), (5, 0)), 1))


def test_relations():
    sq = Polygon(((0, 0), (2, 0), (2, 2), (0, 2)))
    inner = Polygon(((1, 1), (2, 1), (1, 2)))
    far = Polygon(((5, 5), (6, 5), (5, 6)))
    cross = Polygon(((1, 1), (3, 1), (3, 3), (1, 3)))
    assert relation(sq, far, CLOSED) == TYPE_A
    assert relation(sq, inner, CLOSED) == TYPE_B
    assert relation(sq, cross, CLOSED) == TYPE_C
    M = relation_matrix(Arrangement(2, CLOSED, (sq, inner)))
    assert M[1, 2] == TYPE_B and M[2, 1] == TYPE_C or M[2, 1] in (TYPE_B, TYPE_C)


def test_three_disks():
    # three unit disks around the origin: empty centre vs overlapping centre
    spread = [Disk((Fraction(2), Fraction(0)), Fraction(1, 1) * Fraction(169, 100)),
              Disk((Fraction(-1), Fraction(173, 100)), Fraction(169, 100)),
              Disk((Fraction(-1), Fraction(-173, 100)), Fraction(169, 100))]
    assert not triple_intersects(*spread, OPEN)
    assert triple_clearance(*spread) > 0
    tight = [Disk(d.center, Fraction(5)) for d in spread]
    assert triple_intersects(*tight, OPEN)


def test_segment_triangle_clearance_positive():
    a = Segment((0, 0), (4, 4))
    b = Segment((0, 4), (4, 0))
    c = Polygon(((3, 0), (4, 0), (4, 1)))
    assert not triple_intersects(a, b, c, CLOSED)
    assert triple_clearance(a, b, c) > 0


def test_distance_rejects_curved():
    with pytest.raises(kernel.UnsupportedBody):
        distance_sq(Disk((0, 0), 1), Segment((3, 0), (4, 0)))


def test_boundary_free_point():
    a = Polygon(((0, 0), (2, 0), (2, 2), (0, 2)))
    b = Polygon(((1, -1), (3, -1), (3, 3), (1, 3)))
    arr = Arrangement(2, OPEN, (a, b))
    p, m = boundary_free_point(arr, 1)
    assert m > 0
    assert not kernel.member(p, b, strict=False)
    inner = Polygon(((Fraction(1, 2), Fraction(1, 2)), (1, Fraction(1, 2)), (1, 1), (Fraction(1, 2), 1)))
    with pytest.raises(NoFreeBoundary):
        boundary_free_point(Arrangement(2, OPEN, (a, inner)), 2)


@given(st.one_of(polygons(), disks()))
def test_witness_ball_is_inside(X):
    c, r = witness_ball([X])
    assert r > 0
    assert kernel.ball_fits(c, r, inside=[X])


def test_witness_ball_values():
    sq = Polygon(((0, 0), (1, 0), (1, 1), (0, 1)))
    assert witness_ball([sq]) == ((Fraction(1, 2), Fraction(1, 2)), Fraction(1, 2))
    # a square with a half-plane piece removed
    left = Polygon(((-5, -5), (Fraction(1, 2), -5), (Fraction(1, 2), 5), (-5, 5)))
    c, r = witness_ball([sq], [left])
    assert kernel.ball_fits(c, r, inside=[sq], outside=[left]) and r > 0


def test_interval_predicates():
    a, b = Interval(0, 2), Interval(2, 3)
    assert pair_intersects(a, b, CLOSED) and not pair_intersects(a, b, OPEN)
    assert contains(Interval(0, 5), a)
    assert not triple_intersects(Interval(0, 2), Interval(1, 3), Interval(Fraction(5, 2), 4), OPEN)


_pts3 = st.lists(st.tuples(*[st.integers(-6, 6)] * 3), min_size=1, max_size=5)


@given(st.lists(_pts3, min_size=2, max_size=3))
def test_separation_certificate_is_sound(sets):
    from sparsecodes.geometry import common_point, core_info, separated

    infos = [core_info(tuple(tuple(Fraction(c) for c in p) for p in s)) for s in sets]
    if separated(infos):
        assert common_point(infos) is None


def test_separation_certificate_finds_far_sets():
    from sparsecodes.geometry import core_info, separated

    a = core_info(((Fraction(0), Fraction(0), Fraction(0)), (Fraction(1), Fraction(0), Fraction(0))))
    b = core_info(((Fraction(5), Fraction(5), Fraction(5)), (Fraction(6), Fraction(5), Fraction(5))))
    assert separated([a, b])
    assert not separated([a, a])
