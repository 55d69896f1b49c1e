"""Predicates on bodies: intersection, containment, triples, distances.

Every body is ``core (+) rho*B`` with ``rho**2`` rational, so pair and
containment questions reduce to comparisons of the form
``sqrt(a) + sqrt(b) <= sqrt(c)`` which are decided exactly.  Triples that
involve a curved body go through a Lipschitz branch and bound on the
convex function ``max_l (signed_dist(x, core_l) - rho_l)``; a "yes" is
always confirmed by an exact membership check of a rational point, a "no"
is certified by float bounds carrying an explicit error slack, and
anything closer than ``2**-40`` of the search diameter is reported as
:class:`Indeterminate`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import accel
from ._exact import Q, dot, norm_sq, sqrt_lower, sqrt_upper, sum_sqrt_le, sum_sqrt_lt
from .bodies import OPEN, Arrangement, ArrangementError, Body, DimensionMismatch, Disk, Polygon
from .geometry import (
    boxes_overlap,
    common_point,
    core_info,
    cores_intersect,
    dist_sq_cores,
    dist_sq_point,
    in_core,
    interior_point,
    interiors_intersect,
    relint_common,
)

TYPE_A = "A"
TYPE_B = "B"
TYPE_C = "C"

INF = math.inf
BB_RELATIVE_TOL = 2.0 ** -40
_MAX_BOXES = 1 << 17


class Indeterminate(RuntimeError):
    """The numeric triple test could not separate the answer from zero."""


class UnsupportedBody(TypeError):
    pass


class NoFreeBoundary(ValueError):
    pass


class MarginTooSmall(ValueError):
    pass


def info(body: Body):
    return core_info(body.core)


def _check(*bodies):
    d = bodies[0].dim
    for b in bodies[1:]:
        if b.dim != d:
            raise DimensionMismatch(f"bodies of dimension {d} and {b.dim}")


def _open(topology) -> bool:
    return topology == OPEN or topology is True


def member(p, body: Body, strict: bool = False) -> bool:
    """Exact membership of a rational point (``strict``: interior)."""
    if body.is_empty:
        return False
    inf = info(body)
    rs = body.rho_sq
    if rs == 0:
        return in_core(p, inf, strict)
    dsq = dist_sq_point(p, inf)
    return dsq < rs if strict else dsq <= rs


def _rho_up(body) -> Fraction:
    return sqrt_upper(body.rho_sq, 32)


# ------------------------------------------------------------------- pairs

def pair_intersects(X: Body, Y: Body, topology) -> bool:
    _check(X, Y)
    return _pair(X, Y, _open(topology))


@lru_cache(maxsize=1 << 18)
def _pair(X, Y, open_):
    if X.is_empty or Y.is_empty:
        return False
    a, b = info(X), info(Y)
    if not boxes_overlap((a, b), _rho_up(X) + _rho_up(Y)):
        return False
    if X.rho_sq == 0 and Y.rho_sq == 0:
        if not open_:
            return cores_intersect((a, b))
        if a.full and b.full:
            return interiors_intersect((a, b))
        return relint_common((a, b))
    D = dist_sq_cores(a, b)
    if open_:
        return not sum_sqrt_le(X.rho_sq, Y.rho_sq, D)
    return not sum_sqrt_lt(X.rho_sq, Y.rho_sq, D)


def contains(X: Body, Y: Body) -> bool:
    """Is ``Y`` a subset of ``X`` (as closed point sets)?"""
    _check(X, Y)
    return _contains(X, Y)


@lru_cache(maxsize=1 << 18)
def _contains(X, Y):
    if Y.is_empty:
        return True
    if X.is_empty:
        return False
    a, b = info(X), info(Y)
    pad = _rho_up(X)
    for i in range(a.dim):
        if b.lo[i] < a.lo[i] - pad or b.hi[i] > a.hi[i] + pad:
            return False
    rx, ry = X.rho_sq, Y.rho_sq
    # Minkowski cancellation: Q + sB inside P + rB  iff  Q + (s-r)B inside P  (s > r)
    #                                              iff  Q inside P + (r-s)B  (s <= r)
    if ry <= rx:
        return all(sum_sqrt_le(dist_sq_point(v, a), ry, rx) for v in b.points)
    if not a.full:
        return False
    for v in b.points:
        for n, c in a.facets:
            h = c - dot(n, v)
            if h < 0 or sum_sqrt_lt(h * h / norm_sq(n), rx, ry):
                return False
    return True


def equal_sets(X: Body, Y: Body) -> bool:
    return contains(X, Y) and contains(Y, X)


def distance_sq(X: Body, Y: Body) -> Fraction:
    """Exact squared distance between closed polytopal bodies."""
    _check(X, Y)
    for b in (X, Y):
        if b.is_empty or b.rho_sq != 0:
            raise UnsupportedBody(f"distance_sq needs polytopal bodies, got {b.kind}; use gap_lower")
    return dist_sq_cores(info(X), info(Y))


def gap_lower(X: Body, Y: Body) -> Fraction:
    """Rational lower bound on the Euclidean gap between two closed bodies (0 if they meet)."""
    _check(X, Y)
    if X.is_empty or Y.is_empty:
        raise UnsupportedBody("gap to an empty body")
    D = dist_sq_cores(info(X), info(Y))
    g = sqrt_lower(D, 48) - sqrt_upper(X.rho_sq, 48) - sqrt_upper(Y.rho_sq, 48)
    return max(g, Fraction(0))


def point_clearance(p, Y: Body) -> Fraction:
    """Rational lower bound on dist(p, Y) for the closed body ``Y``."""
    if Y.is_empty:
        return Fraction(10**9)
    g = sqrt_lower(dist_sq_point(p, info(Y)), 48) - sqrt_upper(Y.rho_sq, 48)
    return max(g, Fraction(0))


# ------------------------------------------------------------------ triples

def triple_intersects(X: Body, Y: Body, Z: Body, topology) -> bool:
    _check(X, Y, Z)
    return _triple(X, Y, Z, _open(topology))


@lru_cache(maxsize=1 << 18)
def _triple(X, Y, Z, open_):
    bs = (X, Y, Z)
    if any(b.is_empty for b in bs):
        return False
    for p, q in itertools.combinations(bs, 2):
        if not _pair(p, q, open_):
            return False
    infos = tuple(info(b) for b in bs)
    if all(b.rho_sq == 0 for b in bs):
        if not open_:
            return cores_intersect(infos)
        if all(x.full for x in infos):
            return interior_point(infos) is not None
        return relint_common(infos)
    if X.dim == 1:
        return True  # pairwise intersecting intervals share a point
    return _bb(bs, open_, "decide")


@lru_cache(maxsize=4096)
def _pack(bodies):
    d = bodies[0].dim
    return accel.make_pack([info(b) for b in bodies], [math.sqrt(float(b.rho_sq)) for b in bodies], d)


def excess(points, bodies, early: bool = True) -> np.ndarray:
    """Float signed distance of each point to each (nonempty) body: negative inside.

    With ``early`` the value for far-away points is only a positive lower bound.
    """
    pk = _pack(tuple(bodies))
    return accel.signed_distances(points, pk, early=early) - pk.rho


def _scale(bodies) -> float:
    m = 1.0
    for b in bodies:
        inf = info(b)
        m = max(m, max(abs(float(c)) for c in inf.lo + inf.hi) + math.sqrt(float(b.rho_sq)))
    return m


def _bb(bodies, open_, want):
    """Branch and bound on f(x) = max_l (sd_l(x) - rho_l).

    ``want == "decide"``: True if f < 0 somewhere (confirmed exactly), False
    if f > 0 everywhere (float-certified), else Indeterminate.
    ``want == "clearance"``: certified lower bound on min f (0.0 if it may be <= 0).
    """
    d = bodies[0].dim
    infos = [info(b) for b in bodies]
    rhos = [math.sqrt(float(b.rho_sq)) for b in bodies]
    lo = np.array([[float(x) for x in inf.lo] for inf in infos]) - np.array(rhos)[:, None]
    hi = np.array([[float(x) for x in inf.hi] for inf in infos]) + np.array(rhos)[:, None]
    if want == "decide":
        blo, bhi = lo.max(axis=0), hi.min(axis=0)
    else:
        blo, bhi = lo.min(axis=0), hi.max(axis=0)
    scale = _scale(bodies)
    slack = 1e-11 * scale
    if want == "decide" and np.any(blo > bhi + slack):
        return False
    center = (blo + bhi) / 2
    half = max(float((bhi - blo).max()) / 2, 1e-9 * scale)
    diam = 2 * half * math.sqrt(d)
    C = center[None, :]
    offs = np.array(list(itertools.product((-0.5, 0.5), repeat=d)))
    best, best_pt = INF, None
    tried = 0
    while True:
        vals = excess(C, bodies, early=False).max(axis=1)
        r = half * math.sqrt(d)
        k = int(np.argmin(vals))
        if vals[k] < best:
            best, best_pt = float(vals[k]), C[k]
            if want == "decide" and best < 0 and tried < 64:
                tried += 1
                p = tuple(Fraction(float(x)).limit_denominator(1 << 40) for x in best_pt)
                if all(member(p, b, strict=True) for b in bodies):
                    return True
        lower = float((vals - r).min())
        if want == "decide":
            keep = vals - r <= slack
            if not keep.any():
                return False
        else:
            if best <= slack:
                return 0.0
            if lower > 0 and lower >= 0.5 * best:
                return max(lower - slack, 0.0)
            keep = vals - r <= best
        if r < BB_RELATIVE_TOL * diam or keep.sum() * 2**d > _MAX_BOXES:
            if want == "decide":
                raise Indeterminate(f"triple test margin below tolerance (best {best:.3e})")
            return max(lower - slack, 0.0)
        half /= 2
        C = (C[keep][:, None, :] + offs[None, :, :] * (2 * half)).reshape(-1, d)


def triple_clearance(X: Body, Y: Body, Z: Body) -> Fraction:
    """Rational lower bound on ``min_x max_l dist(x, body_l)`` (0 when the closed triple may meet)."""
    _check(X, Y, Z)
    return _clearance((X, Y, Z))


@lru_cache(maxsize=1 << 16)
def _clearance(bodies):
    if any(b.is_empty for b in bodies):
        return Fraction(10**9)
    v = _bb(bodies, False, "clearance")
    return Fraction(v).limit_denominator(1 << 40) * Fraction(999, 1000) if v > 0 else Fraction(0)


# ---------------------------------------------------------------- relations

def relation(X: Body, Y: Body, topology) -> str:
    """A: disjoint, B: Y inside X, C: proper intersection."""
    if not pair_intersects(X, Y, topology):
        return TYPE_A
    if contains(X, Y):
        return TYPE_B
    return TYPE_C


@dataclass(frozen=True)
class RelationMatrix:
    n: int
    entries: tuple  # ((i, j, type), ...) for i != j, 1-based

    def __getitem__(self, key) -> str:
        i, j = key
        return self._map()[(i, j)]

    def _map(self):
        return {(i, j): t for i, j, t in self.entries}

    def to_json(self) -> dict:
        return {"n": self.n, "relations": {f"{i},{j}": t for i, j, t in self.entries}}


def relation_matrix(arr: Arrangement) -> RelationMatrix:
    ent = []
    for i in range(1, arr.n + 1):
        for j in range(1, arr.n + 1):
            if i != j:
                ent.append((i, j, relation(arr.body(i), arr.body(j), arr.topology)))
    return RelationMatrix(arr.n, tuple(ent))


# ----------------------------------------------------------- boundary points

def rational_directions(d: int) -> list:
    """Rational unit vectors spread over the sphere (inverse stereographic images)."""
    ts = [Fraction(x) for x in (-3, -2, -1, Fraction(-1, 2), Fraction(-1, 3), 0,
                                 Fraction(1, 3), Fraction(1, 2), 1, 2, 3)]
    if d == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    out = []
    if d == 2:
        for t in ts:
            w = 1 + t * t
            out.append(((1 - t * t) / w, 2 * t / w))
        out.append((Fraction(-1), Fraction(0)))
        return out
    for s in ts[1:-1]:
        for t in ts[1:-1]:
            w = s * s + t * t + 1
            out.append((2 * s / w, 2 * t / w, (s * s + t * t - 1) / w))
    out.append((Fraction(0), Fraction(0), Fraction(1)))
    return out


_TS = (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(1, 8), Fraction(7, 8))


def boundary_candidates(X: Body) -> list:
    """Rational points on (or, for irrational radii, within 2**-60 of) the boundary of X."""
    inf = info(X)
    d = inf.dim
    if X.rho_sq == 0:
        if not inf.full:
            pts = list(inf.points)
            for a, b in inf.edges:
                pts += [tuple(x + (y - x) * t for x, y in zip(a, b)) for t in _TS]
            return pts
        if d == 1:
            return [(inf.lo[0],), (inf.hi[0],)]
        pts = []
        for a, b in inf.edges:
            pts += [tuple(x + (y - x) * t for x, y in zip(a, b)) for t in _TS]
        if d == 3:
            for a, b, c in inf.triangles:
                for w in ((Fraction(1, 3),) * 3, (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
                          (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)),
                          (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))):
                    pts.append(tuple(w[0] * x + w[1] * y + w[2] * z for x, y, z in zip(a, b, c)))
        return pts
    r = X.rho if X.rho is not None else sqrt_lower(X.rho_sq, 60)
    pts = []
    for v in inf.points:
        for u in rational_directions(d):
            # u must lie in the normal cone of the core at v
            if all(dot(u, tuple(w_ - v_ for w_, v_ in zip(w, v))) <= 0 for w in inf.points):
                pts.append(tuple(x + r * c for x, c in zip(v, u)))
    return pts


def boundary_free_point(arr: Arrangement, j: int):
    """A rational boundary point of body j and a lower bound on its distance to all other bodies.

    The margin is ``math.inf`` when there are no other nonempty bodies.
    """
    X = arr.body(j)
    if X.is_empty:
        raise NoFreeBoundary(f"body {j} is empty")
    others = [arr.body(k) for k in range(1, arr.n + 1) if k != j and not arr.body(k).is_empty]
    for k in range(1, arr.n + 1):
        if k != j and contains(arr.body(k), X):
            raise NoFreeBoundary(f"body {j} is contained in body {k}")
    cands = boundary_candidates(X)
    if cands and not others:
        return cands[0], INF
    if len(cands) > 8:
        # rank by float clearance, then bound only the front runners exactly
        F = np.array([[float(c) for c in p] for p in cands])
        approx = excess(F, others, early=False).min(axis=1)
        cands = [cands[k] for k in np.argsort(-approx, kind="stable")[:8]]
    best, best_m = None, None
    for p in cands:
        m = min(point_clearance(p, Y) for Y in others)
        if best_m is None or m > best_m:
            best, best_m = p, m
    if best is None or best_m <= 0:
        raise NoFreeBoundary(f"no candidate boundary point of body {j} is clear of the other bodies")
    return best, best_m


# ------------------------------------------------------------ disk bridging

def _unit_near(theta: float) -> tuple:
    t = Fraction(math.tan(theta / 2)).limit_denominator(1 << 24)
    w = 1 + t * t
    return ((1 - t * t) / w, 2 * t / w)


def disk_polygon(disk: Disk, deviation: float) -> Polygon:
    """Rational polygon inscribed in the disk, Hausdorff-close within ``deviation``."""
    r = sqrt_lower(disk.radius_sq, 48)
    rf = float(r)
    m = 8
    while rf * (1 - math.cos(math.pi / m)) >= deviation / 2 and m < 1 << 16:
        m *= 2
    dirs = [_unit_near(2 * math.pi * k / m) for k in range(-m // 2 + 1, m // 2)]
    dirs.append((Fraction(-1), Fraction(0)))
    c = disk.center
    return Polygon(tuple((c[0] + r * u[0], c[1] + r * u[1]) for u in dirs))


def disks_to_polygons(arr: Arrangement, margin) -> Arrangement:
    """Replace every disk by an inscribed rational polygon, keeping the relation matrix."""
    margin = Q(margin)
    if margin <= 0:
        raise MarginTooSmall("margin must be positive")
    if arr.dim != 2:
        raise ArrangementError("disks_to_polygons needs a planar arrangement")
    polys = []
    for k, b in enumerate(arr.bodies, start=1):
        if not isinstance(b, Disk):
            raise ArrangementError(f"body {k} is a {b.kind}, expected a disk")
        polys.append(disk_polygon(b, float(margin) / 4))
    out = Arrangement(2, arr.topology, tuple(polys))
    if relation_matrix(out) != relation_matrix(arr):
        raise MarginTooSmall("polygon approximation changed a pairwise relation")
    for t in itertools.combinations(range(arr.n), 3):
        before = triple_intersects(*(arr.bodies[i] for i in t), arr.topology)
        after = triple_intersects(*(out.bodies[i] for i in t), out.topology)
        if before != after:
            raise MarginTooSmall(f"polygon approximation changed triple {tuple(i + 1 for i in t)}")
    return out


# ------------------------------------------------------------ witness balls

def ball_fits(center, radius, inside=(), outside=()) -> bool:
    """Is the closed ball inside every ``inside`` body, its interior missing every ``outside`` body?

    Touching an outside body is allowed: the centre then still lies at
    distance ``radius`` from it.
    """
    from .bodies import ball

    B = ball(center, radius)
    return all(contains(X, B) for X in inside) and not any(_pair(B, Y, True) for Y in outside)


def _chebyshev(inside, outside):
    """Exact largest ball (against rational upper bounds on facet norms) for polytopal regions."""
    from . import lp

    infos = [info(X) for X in inside]
    d = infos[0].dim
    rows, rhs = [], []
    for inf in infos:
        for a, b in inf.facets:
            rows.append(list(a) + [sqrt_upper(norm_sq(a), 32)])
            rhs.append(b)
    out_facets = [info(Y).facets for Y in outside]
    best = None
    for choice in itertools.product(*out_facets) if out_facets else [()]:
        A = list(rows)
        b = list(rhs)
        for a, c in choice:
            A.append([-x for x in a] + [sqrt_upper(norm_sq(a), 32)])
            b.append(-c)
        res = lp.maximize([0] * d + [1], A, b, free=[True] * d + [False])
        if res.status == lp.OPTIMAL and res.value > 0 and (best is None or res.value > best[1]):
            best = (tuple(res.x[:d]), res.value)
    return best


_RNG_SEED = 20240611


def _float_witness(inside, outside, samples=400):
    bodies = list(inside) + list(outside)
    nin = len(inside)
    infos = [info(X) for X in inside]
    d = infos[0].dim
    rh = [math.sqrt(float(X.rho_sq)) for X in inside]
    lo = np.max([[float(c) for c in inf.lo] for inf in infos], axis=0) - max(rh)
    hi = np.min([[float(c) for c in inf.hi] for inf in infos], axis=0) + max(rh)
    if np.any(lo > hi):
        return None, -INF
    seeds = [np.array([float(c) for c in p]) for inf in infos for p in inf.points]
    seeds += [np.mean([[float(c) for c in p] for p in inf.points], axis=0) for inf in infos]
    rng = np.random.default_rng(_RNG_SEED)
    P = np.vstack([np.array(seeds).reshape(-1, d), lo + (hi - lo) * rng.random((samples, d))])
    sign = np.array([-1.0] * nin + [1.0] * len(outside))

    def g(X):
        return (excess(X, bodies, early=False) * sign).min(axis=1)

    vals = g(P)
    dirs = np.array([[float(c) for c in u] for u in rational_directions(d)])
    step = float((hi - lo).max()) / 4 or 1.0
    order = np.argsort(-vals)[:4]
    best_x, best_v = P[order[0]], vals[order[0]]
    floor = 1e-7 * (1 + float(np.abs(hi).max()))
    for k in order:
        x, v = P[k], vals[k]
        s = step
        for _ in range(400):
            if s <= floor:
                break
            cand = x + s * dirs
            cv = g(cand)
            j = int(np.argmax(cv))
            # creeping by float noise does not count as progress
            if cv[j] > v + 1e-3 * s:
                x, v = cand[j], cv[j]
            else:
                s /= 2
        if v > best_v:
            best_x, best_v = x, v
    return best_x, float(best_v)


def witness_ball(inside, outside=(), fraction=Fraction(9, 10)):
    """Rational ball inside every body of ``inside`` whose interior misses every body of ``outside``.

    Returns ``(center, radius)`` exactly verified, or None if no ball was found.
    """
    inside, outside = list(inside), list(outside)
    if any(X.is_empty for X in inside):
        return None
    outside = [Y for Y in outside if not Y.is_empty]
    if all(X.rho_sq == 0 and info(X).full for X in inside) and all(
        Y.rho_sq == 0 and info(Y).full for Y in outside
    ):
        res = _chebyshev(inside, outside)
        if res is None:
            return None
        return res
    if not outside and all(X.rho_sq > 0 for X in inside):
        p = common_point([info(X) for X in inside])
        if p is not None:
            return p, fraction * min(sqrt_lower(X.rho_sq, 32) for X in inside)
    x, v = _float_witness(inside, outside)
    if x is None or v <= 0:
        return None
    c = tuple(Fraction(float(t)).limit_denominator(1 << 32) for t in x)
    r = Fraction(v * float(fraction)).limit_denominator(1 << 32)
    for _ in range(12):
        if r > 0 and ball_fits(c, r, inside, outside):
            return c, r
        r /= 2
    return None
