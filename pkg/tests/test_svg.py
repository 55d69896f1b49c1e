import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sparsecodes import OPEN, Arrangement, Interval, ball, closed_to_open, realize_complete_multipartite
from sparsecodes.svg import Unrenderable, num, render

NS = "{http://www.w3.org/2000/svg}"


def _tags(svg, tag):
    return ET.fromstring(svg).iter(NS + tag)


def test_intervals_are_bars():
    arr = Arrangement(1, OPEN, (Interval(0, 2), Interval(1, 4), Interval(2, 3)))
    svg = render(arr)
    assert len(list(_tags(svg, "rect"))) == 3
    assert [t.text for t in _tags(svg, "text")] == ["1", "2", "3"]


def test_k5_segments_are_labeled_strokes():
    svg = render(realize_complete_multipartite([1] * 5))
    assert len(list(_tags(svg, "polyline"))) == 5
    assert len(list(_tags(svg, "text"))) == 5


def test_offsets_are_rounded():
    svg = render(closed_to_open(realize_complete_multipartite([1, 1, 1])))
    shapes = list(_tags(svg, "polyline"))
    assert len(shapes) == 3 and all(s.get("stroke-linecap") == "round" for s in shapes)


def test_disks_are_circles():
    arr = Arrangement(2, OPEN, (ball((0, 0), 1), ball((3, 0), 2)))
    circles = list(_tags(render(arr), "circle"))
    assert [c.get("r") for c in circles] == ["1.000", "2.000"]


def test_three_dimensions_refused():
    arr = Arrangement(3, OPEN, (ball((0, 0, 0), 1),))
    with pytest.raises(Unrenderable):
        render(arr)


def test_viewbox_covers_bodies():
    arr = Arrangement(2, OPEN, (ball((10, 20), 1),))
    x, y, w, h = map(float, ET.fromstring(render(arr)).get("viewBox").split())
    assert x <= 9 and x + w >= 11 and y <= -21 and y + h >= -19


@given(st.fractions(min_value=-1000, max_value=1000))
def test_num_truncates_toward_zero(x):
    s = num(x)
    assert s.count(".") == 1 and len(s.split(".")[1]) == 3
    v = Fraction(s)
    assert abs(v) <= abs(x) and abs(x) - abs(v) < Fraction(1, 1000)


def test_render_stable_under_reserialization():
    arr = closed_to_open(realize_complete_multipartite([2, 1]))
    assert render(arr) == render(Arrangement.loads(arr.dumps()))
