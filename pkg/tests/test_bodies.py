import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sparsecodes import (
    CLOSED,
    OPEN,
    Arrangement,
    ArrangementError,
    DimensionMismatch,
    Disk,
    Empty,
    Interval,
    Offset,
    Polygon,
    Segment,
    ball,
    point_body,
)

from strategies import disks, polygons, polytopes, segments


@given(st.lists(st.one_of(polygons(), disks(), segments(), segments().map(lambda s: Offset(s, Fraction(1, 3)))),
                min_size=1, max_size=5))
def test_json_roundtrip_is_lossless(bodies):
    arr = Arrangement(2, CLOSED, tuple(bodies) + (Empty(2),))
    back = Arrangement.loads(arr.dumps())
    assert back == arr
    assert json.loads(arr.dumps()) == back.to_json()


@given(polytopes())
def test_polytope_roundtrip(P):
    arr = Arrangement(3, CLOSED, (P, Offset(P, Fraction(1, 7))))
    assert Arrangement.loads(arr.dumps()) == arr


def test_rejects_bad_bodies():
    with pytest.raises(ArrangementError):
        Interval(Fraction(2), Fraction(1))
    with pytest.raises(ArrangementError):
        Polygon(((0, 0), (1, 0), (2, 0)))
    with pytest.raises(ArrangementError):
        Polygon(((0, 0), (0, 1), (1, 0)))  # clockwise
    with pytest.raises(ArrangementError):
        Offset(Segment((0, 0), (1, 0)), 0)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Arrangement(2, CLOSED, (Interval(0, 1),))
    text = json.dumps({"dim": 3, "bodies": [{"kind": "disk", "center": ["0", "0"], "radius_sq": "1"}]})
    with pytest.raises(DimensionMismatch):
        Arrangement.loads(text)


def test_open_needs_full_dimensional_bodies():
    with pytest.raises(ArrangementError):
        Arrangement(2, OPEN, (Segment((0, 0), (1, 1)),))
    Arrangement(2, OPEN, (Disk((0, 0), 1), Empty(2)))


@pytest.mark.parametrize("text", ["{", '{"dim": 2}', '{"dim": 2, "bodies": [{"kind": "blob"}]}',
                                  '{"dim": 2, "bodies": [{"kind": "disk", "center": ["0","0"], "radius_sq": "1/0"}]}'])
def test_malformed_json(text):
    with pytest.raises(ArrangementError):
        Arrangement.loads(text)


def test_ball_and_point_kinds():
    assert ball((0,), 1) == Interval(-1, 1)
    assert isinstance(ball((0, 0), 1), Disk)
    assert isinstance(ball((0, 0, 0), 1), Offset)
    assert point_body((1, 2)) == Segment((1, 2), (1, 2))
