"""Trim and inflate, the epsilon choices that keep a code fixed, and open/closed conversion.

Trimming a polytope by a Euclidean ball would need irrational facet
shifts.  We erode by ``eps * K`` instead, where ``K`` is a rational
polytope inscribed in the unit ball with inradius at least 1/2.  Facet
``a.x <= b`` moves to ``a.x <= b - eps*h_K(a)``, a shift of between
``eps/2`` and ``eps`` in Euclidean terms, and exactly ``eps`` for
axis-parallel facets since ``K`` contains the coordinate unit vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._exact import Q, dot, exact_sqrt, sqrt_lower, sqrt_upper
from .bodies import (
    CLOSED,
    OPEN,
    Arrangement,
    Body,
    Disk,
    Empty,
    Interval,
    Offset,
    Polygon,
    Polytope3,
    Segment,
)
from .geometry import core_info, halfspace_polytope, hull2
from . import kernel


class NotTwoSparseArrangement(ValueError):
    pass


class UnboundedBody(ValueError):
    pass


@lru_cache(maxsize=None)
def unit_polytope(d: int) -> tuple:
    """Vertices of the rational unit-ball approximation ``K`` used for erosion."""
    return tuple(kernel.rational_directions(d))


def _support(a, d) -> Fraction:
    return max(dot(a, u) for u in unit_polytope(d))


def _from_vertices(vs, d) -> Body:
    if not vs:
        return Empty(d)
    inf = core_info(tuple(vs))
    if not inf.full:
        return Empty(d)
    if d == 2:
        return Polygon(tuple(hull2(list(inf.points))))
    return Polytope3(inf.points)


def _erode_polytope(body: Body, eps: Fraction) -> Body:
    inf = core_info(body.core)
    d = inf.dim
    if not inf.full:
        return Empty(d)
    if d == 1:
        lo, hi = inf.lo[0] + eps, inf.hi[0] - eps
        return Interval(lo, hi) if lo < hi else Empty(1)
    facets = [(a, b - eps * _support(a, d)) for a, b in inf.facets]
    return _from_vertices(halfspace_polytope(facets, d), d)


def trim(X: Body, eps) -> Body:
    """Erode ``X`` by ``eps``; returns an Empty body when nothing full-dimensional is left."""
    eps = Q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    d = X.dim
    if X.is_empty:
        return X
    if isinstance(X, Disk):
        r = exact_sqrt(X.radius_sq)
        if r is None:
            # rational radius r' with r - r' in [eps, 1.001 eps]
            bits = 64 + max(0, -eps.numerator.bit_length() + eps.denominator.bit_length())
            r = sqrt_lower(X.radius_sq, bits)
            r = r - eps * Fraction(1, 2000)
        r2 = r - eps
        return Disk(X.center, r2 * r2) if r2 > 0 else Empty(d)
    if isinstance(X, Offset):
        if X.radius > eps:
            return Offset(X.base, X.radius - eps)
        if X.radius == eps:
            return X.base if core_info(X.base.core).full else Empty(d)
        return _erode_polytope(X.base, eps - X.radius)
    return _erode_polytope(X, eps)


def inflate(X: Body, eps) -> Body:
    """Minkowski sum with an ``eps`` ball (as a closed body; the open version is its interior)."""
    eps = Q(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if X.is_empty:
        return X
    if isinstance(X, Offset):
        return Offset(X.base, X.radius + eps)
    if isinstance(X, Interval):
        return Interval(X.lo - eps, X.hi + eps)
    if isinstance(X, Disk):
        r = exact_sqrt(X.radius_sq)
        if r is None:
            r = sqrt_upper(X.radius_sq, 64)
        return Disk(X.center, (r + eps) ** 2)
    if isinstance(X, (Segment, Polygon, Polytope3)):
        return Offset(X, eps)
    raise TypeError(f"cannot inflate {X.kind}")


def trim_arrangement(arr: Arrangement, eps) -> Arrangement:
    return Arrangement(arr.dim, arr.topology, tuple(trim(b, eps) for b in arr.bodies))


def _require_two_sparse(arr):
    from .verify import has_triple_intersection

    t = has_triple_intersection(arr)
    if t is not None:
        raise NotTwoSparseArrangement(f"bodies {t} have a common point")


def trim_witnesses(arr: Arrangement) -> list:
    """Radii of the witness balls behind :func:`choose_trim_epsilon`, tagged by what they protect."""
    out = []
    bs = arr.bodies
    idx = [i for i in range(arr.n) if not bs[i].is_empty]
    for i in idx:
        w = kernel.witness_ball([bs[i]])
        out.append((("body", i + 1), w))
    for i, j in itertools.permutations(idx, 2):
        if i < j and kernel.pair_intersects(bs[i], bs[j], arr.topology):
            out.append((("meet", i + 1, j + 1), kernel.witness_ball([bs[i], bs[j]])))
        if not kernel.contains(bs[j], bs[i]):
            out.append((("escape", i + 1, j + 1), kernel.witness_ball([bs[i]], [bs[j]])))
    return out


def choose_trim_epsilon(arr: Arrangement) -> Fraction:
    """An eps for which trimming every body leaves the code unchanged.

    Takes half the smallest witness radius: a ball inside each body, inside
    each intersecting pair, and inside each body but outside each body that
    does not contain it.
    """
    from .verify import compute_code

    _require_two_sparse(arr)
    radii = []
    for tag, w in trim_witnesses(arr):
        if w is None:
            raise kernel.Indeterminate(f"no witness ball found for {tag}")
        radii.append(w[1])
    eps = min(radii) / 2 if radii else Fraction(1)
    want = compute_code(arr)
    for _ in range(20):
        if compute_code(trim_arrangement(arr, eps)) == want:
            return eps
        eps /= 2
    raise kernel.Indeterminate("trimmed arrangement never matched the original code")


@dataclass(frozen=True)
class InflatePlan:
    eps: dict            # label -> per-body epsilon
    shrink: Fraction     # final uniform factor

    @property
    def uniform(self) -> Fraction:
        vals = [e for e in self.eps.values() if e is not None]
        return (min(vals) if vals else Fraction(1)) * self.shrink


def choose_inflate_epsilon(arr: Arrangement, cap=Fraction(1)) -> InflatePlan:
    """Per-body inflation radii for a closed arrangement.

    eps_i is below half of: the gap to every body disjoint from i, the
    clearance of every triple through i whose pairs all meet, and how far
    each body meeting i but not inside it sticks out of i.  Contained bodies
    then get strictly smaller values than their containers, equal sets equal
    values.
    """
    bs = arr.bodies
    n = arr.n
    idx = [i for i in range(n) if not bs[i].is_empty]
    meet = {}
    for i, j in itertools.combinations(idx, 2):
        meet[i, j] = meet[j, i] = kernel.pair_intersects(bs[i], bs[j], CLOSED)
    raw = {}
    for i in idx:
        vals = [Q(cap)]
        for j in idx:
            if j == i:
                continue
            if not meet[i, j]:
                vals.append(kernel.gap_lower(bs[i], bs[j]))
            elif not kernel.contains(bs[i], bs[j]):
                vals.append(_protrusion(bs[j], bs[i]))
        for j, k in itertools.combinations([t for t in idx if t != i], 2):
            if meet[j, k] and meet[i, j] and meet[i, k]:
                vals.append(kernel.triple_clearance(bs[i], bs[j], bs[k]))
        m = min(vals)
        if m <= 0:
            raise kernel.Indeterminate(f"zero inflation margin at body {i + 1}")
        raw[i] = m / 2
    # inclusion order: containers first
    sup = {i: [k for k in idx if k != i and kernel.contains(bs[k], bs[i])] for i in idx}
    eq = {i: [k for k in sup[i] if kernel.contains(bs[i], bs[k])] for i in idx}
    final = {}
    for i in sorted(idx, key=lambda t: len(sup[t])):
        e = min([raw[i]] + [raw[k] for k in eq[i]])
        for k in sup[i]:
            if k not in eq[i] and k in final:
                e = min(e, final[k] / 2)
        final[i] = e
    return InflatePlan({i + 1: final.get(i) for i in range(n)}, Fraction(1, 2))


def _protrusion(Y: Body, X: Body) -> Fraction:
    """Lower bound on max over y in Y of dist(y, X), for Y not inside X."""
    inf = core_info(Y.core)
    pts = list(inf.points) if Y.rho_sq == 0 else kernel.boundary_candidates(Y)
    return max(kernel.point_clearance(p, X) for p in pts)


def open_to_closed(arr: Arrangement) -> Arrangement:
    if arr.topology != OPEN:
        raise ValueError("open_to_closed needs an open arrangement")
    eps = choose_trim_epsilon(arr)
    return Arrangement(arr.dim, CLOSED, tuple(trim(b, eps) for b in arr.bodies))


def closed_to_open(arr: Arrangement) -> Arrangement:
    if arr.topology != CLOSED:
        raise ValueError("closed_to_open needs a closed arrangement")
    _require_two_sparse(arr)
    e = choose_inflate_epsilon(arr).uniform
    return Arrangement(arr.dim, OPEN, tuple(inflate(b, e) for b in arr.bodies))
