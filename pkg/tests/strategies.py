"""Hypothesis strategies for small exact bodies."""

from fractions import Fraction

from hypothesis import assume, strategies as st

from sparsecodes import Disk, Polygon, Polytope3, Segment
from sparsecodes.geometry import affine_rank, hull2

coord = st.integers(-12, 12).map(Fraction)
point2 = st.tuples(coord, coord)
point3 = st.tuples(coord, coord, coord)


@st.composite
def polygons(draw):
    pts = draw(st.lists(point2, min_size=3, max_size=7, unique=True))
    h = hull2(pts)
    assume(len(h) >= 3)
    return Polygon(tuple(h))


@st.composite
def segments(draw):
    a, b = draw(point2), draw(point2)
    assume(a != b)
    return Segment(a, b)


@st.composite
def disks(draw):
    c = draw(point2)
    r2 = draw(st.fractions(min_value=Fraction(1, 4), max_value=40, max_denominator=16))
    return Disk(c, r2)


@st.composite
def polytopes(draw):
    pts = draw(st.lists(point3, min_size=4, max_size=7, unique=True))
    assume(affine_rank(pts) == 3)
    return Polytope3(tuple(pts))


def to_shapely(body):
    from shapely.geometry import LineString, Point, Polygon as SPolygon

    if isinstance(body, Polygon):
        return SPolygon([(float(x), float(y)) for x, y in body.vertices])
    if isinstance(body, Segment):
        return LineString([tuple(map(float, body.a)), tuple(map(float, body.b))])
    if isinstance(body, Disk):
        return Point(*map(float, body.center)).buffer(float(body.radius_sq) ** 0.5, 256)
    raise TypeError(body)


@st.composite
def intervals(draw):
    a = draw(st.integers(0, 20))
    b = draw(st.integers(1, 8))
    from sparsecodes import Interval

    return Interval(Fraction(a), Fraction(a + b))


@st.composite
def two_sparse(draw, body, topology, min_size=1, max_size=4, dim=2):
    """Arrangements of ``body`` draws with no triple point."""
    from sparsecodes import Arrangement
    from sparsecodes.verify import has_triple_intersection

    bodies = draw(st.lists(body, min_size=min_size, max_size=max_size))
    arr = Arrangement(dim, topology, tuple(bodies))
    assume(has_triple_intersection(arr) is None)
    return arr
