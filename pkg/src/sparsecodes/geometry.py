"""Exact geometry of polytope cores (convex hulls of rational point sets).

Hulls, facet descriptions, closest-point primitives and exact feasibility
tests.  Everything here works on plain point tuples; the body layer in
``kernel`` adds thickening radii and topology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import lp
from ._exact import add, cross3, dot, norm_sq, orient2, primitive, scale, sub

_ZERO = Fraction(0)


@dataclass(frozen=True)
class CoreInfo:
    points: tuple          # extreme points
    dim: int               # ambient dimension
    affine_dim: int
    facets: tuple          # ((a, b), ...) with a.x <= b, a primitive; full-dimensional cores only
    edges: tuple           # ((p, q), ...)
    triangles: tuple       # ((p, q, r), ...): boundary triangles if full-dim, else a cover
    lo: tuple              # bounding box
    hi: tuple

    @property
    def full(self) -> bool:
        return self.affine_dim == self.dim


def affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [list(sub(p, base)) for p in points[1:]]
    rank = 0
    ncol = len(base)
    for c in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / pr[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
    return rank


def hull2(points) -> list:
    """Counterclockwise strictly convex hull (Andrew's monotone chain, exact)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient2(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _extremes_on_line(points):
    base = points[0]
    d = next(sub(p, base) for p in points if p != base)
    proj = sorted(points, key=lambda p: dot(sub(p, base), d))
    return proj[0], proj[-1]


def _planar_hull3(points, normal):
    """Hull of coplanar 3D points, returned in cyclic order."""
    k = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != k]
    lift = {}
    for p in points:
        lift[(p[keep[0]], p[keep[1]])] = p
    return [lift[q] for q in hull2(list(lift))]


def _fan(cycle):
    return tuple((cycle[0], cycle[i], cycle[i + 1]) for i in range(1, len(cycle) - 1))


def _cycle_edges(cycle):
    k = len(cycle)
    return tuple((cycle[i], cycle[(i + 1) % k]) for i in range(k))


@lru_cache(maxsize=None)
def core_info(points: tuple) -> CoreInfo:
    pts = tuple(dict.fromkeys(points))
    if not pts:
        raise ValueError("empty core")
    d = len(pts[0])
    lo = tuple(min(p[i] for p in pts) for i in range(d))
    hi = tuple(max(p[i] for p in pts) for i in range(d))
    r = affine_rank(pts)
    facets: tuple = ()
    edges: tuple = ()
    tris: tuple = ()
    if r == 0:
        ext = (pts[0],)
    elif r == 1:
        a, b = _extremes_on_line(pts)
        ext = (a, b)
        edges = ((a, b),)
        if d == 1:
            facets = (((Fraction(-1),), -a[0]), ((Fraction(1),), b[0])) if a[0] < b[0] else (
                ((Fraction(-1),), -b[0]), ((Fraction(1),), a[0]))
    elif d == 2:
        cyc = hull2(pts)
        ext = tuple(cyc)
        edges = _cycle_edges(cyc)
        tris = _fan(cyc)
        fs = []
        for p, q in edges:
            a = primitive((q[1] - p[1], p[0] - q[0]))
            fs.append((a, dot(a, p)))
        facets = tuple(fs)
    elif r == 2:  # planar point set in R^3
        nrm = next(
            n for n in (cross3(sub(q, pts[0]), sub(s, pts[0])) for q, s in itertools.combinations(pts[1:], 2))
            if any(n)
        )
        cyc = _planar_hull3(pts, nrm)
        ext = tuple(cyc)
        edges = _cycle_edges(cyc)
        tris = _fan(cyc)
    else:
        fs = {}
        for p, q, s in itertools.combinations(pts, 3):
            n = cross3(sub(q, p), sub(s, p))
            if not any(n):
                continue
            n = primitive(n)
            b = dot(n, p)
            side = [dot(n, x) - b for x in pts]
            if all(v <= 0 for v in side):
                fs.setdefault((n, b), None)
            elif all(v >= 0 for v in side):
                fs.setdefault((tuple(-c for c in n), -b), None)
        facets = tuple(fs)
        tri_list = []
        edge_set = {}
        verts = {}
        for a, b in facets:
            on = [x for x in pts if dot(a, x) == b]
            cyc = _planar_hull3(on, a)
            for v in cyc:
                verts[v] = None
            tri_list.extend(_fan(cyc))
            for e in _cycle_edges(cyc):
                edge_set.setdefault(tuple(sorted(e)), None)
        ext = tuple(verts)
        tris = tuple(tri_list)
        edges = tuple(edge_set)
    return CoreInfo(ext, d, r, facets, edges, tris, lo, hi)


# ---------------------------------------------------------------- closest points

def closest_on_segment(p, a, b):
    ab = sub(b, a)
    den = norm_sq(ab)
    if den == 0:
        return a
    t = dot(sub(p, a), ab) / den
    if t <= 0:
        return a
    if t >= 1:
        return b
    return add(a, scale(ab, t))


def closest_on_triangle(p, a, b, c):
    ab, ac, ap = sub(b, a), sub(c, a), sub(p, a)
    d1, d2 = dot(ab, ap), dot(ac, ap)
    if d1 <= 0 and d2 <= 0:
        return a
    bp = sub(p, b)
    d3, d4 = dot(ab, bp), dot(ac, bp)
    if d3 >= 0 and d4 <= d3:
        return b
    vc = d1 * d4 - d3 * d2
    if vc <= 0 and d1 >= 0 and d3 <= 0:
        return add(a, scale(ab, d1 / (d1 - d3)))
    cp = sub(p, c)
    d5, d6 = dot(ab, cp), dot(ac, cp)
    if d6 >= 0 and d5 <= d6:
        return c
    vb = d5 * d2 - d1 * d6
    if vb <= 0 and d2 >= 0 and d6 <= 0:
        return add(a, scale(ac, d2 / (d2 - d6)))
    va = d3 * d6 - d5 * d4
    if va <= 0 and (d4 - d3) >= 0 and (d5 - d6) >= 0:
        w = (d4 - d3) / ((d4 - d3) + (d5 - d6))
        return add(b, scale(sub(c, b), w))
    den = va + vb + vc
    v, w = vb / den, vc / den
    return add(a, add(scale(ab, v), scale(ac, w)))


def _clamp01(x):
    return _ZERO if x < 0 else (Fraction(1) if x > 1 else x)


def segment_segment_dist_sq(p1, q1, p2, q2):
    d1, d2, r = sub(q1, p1), sub(q2, p2), sub(p1, p2)
    a, e, f = norm_sq(d1), norm_sq(d2), dot(d2, r)
    if a == 0 and e == 0:
        return norm_sq(r)
    if a == 0:
        s, t = _ZERO, _clamp01(f / e)
    else:
        c = dot(d1, r)
        if e == 0:
            t, s = _ZERO, _clamp01(-c / a)
        else:
            b = dot(d1, d2)
            den = a * e - b * b
            s = _clamp01((b * f - c * e) / den) if den != 0 else _ZERO
            t = (b * s + f) / e
            if t < 0:
                t, s = _ZERO, _clamp01(-c / a)
            elif t > 1:
                t, s = Fraction(1), _clamp01((b - c) / a)
    c1 = add(p1, scale(d1, s))
    c2 = add(p2, scale(d2, t))
    return norm_sq(sub(c1, c2))


# ---------------------------------------------------------------- point queries

def in_core(p, info: CoreInfo, strict: bool = False) -> bool:
    """Membership of ``p`` in the hull; ``strict`` asks for the interior (full-dim only)."""
    if info.full:
        if strict:
            return all(dot(a, p) < b for a, b in info.facets)
        return all(dot(a, p) <= b for a, b in info.facets)
    if strict:
        return False
    return dist_sq_point(p, info) == 0


def dist_sq_point(p, info: CoreInfo) -> Fraction:
    if info.full and all(dot(a, p) <= b for a, b in info.facets):
        return _ZERO
    if info.affine_dim == 0:
        return norm_sq(sub(p, info.points[0]))
    if info.dim == 1 or (info.affine_dim == 1):
        a, b = info.edges[0]
        return norm_sq(sub(p, closest_on_segment(p, a, b)))
    if info.dim == 2:
        return min(norm_sq(sub(p, closest_on_segment(p, a, b))) for a, b in info.edges)
    return min(norm_sq(sub(p, closest_on_triangle(p, *t))) for t in info.triangles)


def facet_depth_ok(p, info: CoreInfo, depth_sq: Fraction) -> bool:
    """Is the ball of squared radius ``depth_sq`` around ``p`` inside the (full-dim) core?"""
    if not info.full:
        return False
    for a, b in info.facets:
        h = b - dot(a, p)
        if h < 0 or h * h < depth_sq * norm_sq(a):
            return False
    return True


# ---------------------------------------------------------------- core pairs

def boxes_overlap(infos, pad=_ZERO) -> bool:
    d = infos[0].dim
    for i in range(d):
        if max(x.lo[i] for x in infos) > min(x.hi[i] for x in infos) + pad:
            return False
    return True


def _segments2_intersect(a, b, c, e) -> bool:
    o1, o2 = orient2(a, b, c), orient2(a, b, e)
    o3, o4 = orient2(c, e, a), orient2(c, e, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True

    def on(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    return (
        (o1 == 0 and on(a, b, c)) or (o2 == 0 and on(a, b, e))
        or (o3 == 0 and on(c, e, a)) or (o4 == 0 and on(c, e, b))
    )


def cores_intersect(infos) -> bool:
    """Do the closed hulls share a common point?  Exact."""
    if not boxes_overlap(infos):
        return False
    d = infos[0].dim
    if d == 1:
        return True
    if len(infos) == 2:
        a, b = infos
        if d == 2 and len(a.points) <= 2 and len(b.points) <= 2:
            pa = a.points if len(a.points) == 2 else a.points * 2
            pb = b.points if len(b.points) == 2 else b.points * 2
            return _segments2_intersect(pa[0], pa[1], pb[0], pb[1])
        for x, y in ((a, b), (b, a)):
            if len(x.points) == 1:
                return in_core(x.points[0], y)
    if separated(infos):
        return False
    return common_point(infos) is not None


def separated(infos) -> bool:
    """Exactly certified proof that the hulls share no point (False means "not proven").

    A float LP proposes functionals w_2..w_m; with W = w_2 + ... + w_m the
    hulls are disjoint whenever max(-W.p : p in K_1) + sum_k max(w_k.p : p in K_k) < 0,
    which is checked in exact arithmetic on the float values taken exactly.
    """
    from scipy.optimize import linprog

    m, d = len(infos), infos[0].dim
    nw = d * (m - 1)
    # variables: w_2..w_m (d each), then s_1..s_m
    A, b = [], []
    for p in infos[0].points:
        row = [0.0] * (nw + m)
        for k in range(m - 1):
            for c in range(d):
                row[k * d + c] = -float(p[c])
        row[nw] = -1.0
        A.append(row)
        b.append(0.0)
    for k in range(1, m):
        for p in infos[k].points:
            row = [0.0] * (nw + m)
            for c in range(d):
                row[(k - 1) * d + c] = float(p[c])
            row[nw + k] = -1.0
            A.append(row)
            b.append(0.0)
    cost = [0.0] * nw + [1.0] * m
    res = linprog(cost, A_ub=A, b_ub=b, bounds=[(-1, 1)] * nw + [(None, None)] * m, method="highs")
    if res.status != 0 or res.fun >= 0:
        return False
    w = [tuple(Fraction(float(res.x[k * d + c])) for c in range(d)) for k in range(m - 1)]
    W = tuple(sum((wk[c] for wk in w), _ZERO) for c in range(d))
    total = max(-dot(W, p) for p in infos[0].points)
    for k in range(1, m):
        total += max(dot(w[k - 1], p) for p in infos[k].points)
    return total < 0


def common_point(infos):
    """A point in every closed hull, or None."""
    sizes = [len(x.points) for x in infos]
    nv = sum(sizes)
    d = infos[0].dim
    A_eq, b_eq = [], []
    off = 0
    for s in sizes:
        row = [0] * nv
        for j in range(s):
            row[off + j] = 1
        A_eq.append(row)
        b_eq.append(1)
        off += s
    first = infos[0]
    off = sizes[0]
    for x in infos[1:]:
        for c in range(d):
            row = [0] * nv
            for j, p in enumerate(first.points):
                row[j] = p[c]
            for j, p in enumerate(x.points):
                row[off + j] = -p[c]
            A_eq.append(row)
            b_eq.append(0)
        off += len(x.points)
    sol = lp.feasible_point(A_eq=A_eq, b_eq=b_eq, nvars=nv)
    if sol is None:
        return None
    return tuple(sum((sol[j] * p[c] for j, p in enumerate(first.points)), _ZERO) for c in range(d))


def interior_point(infos):
    """A point interior to every full-dimensional hull, or None."""
    d = infos[0].dim
    A, b = [], []
    for x in infos:
        for a, rhs in x.facets:
            A.append(list(a) + [1])
            b.append(rhs)
    A.append([0] * d + [1])
    b.append(1)
    res = lp.maximize([0] * d + [1], A_ub=A, b_ub=b, free=[True] * d + [False])
    if res.status != lp.OPTIMAL or res.value <= 0:
        return None
    return tuple(res.x[:d])


def interiors_intersect(infos) -> bool:
    if not boxes_overlap(infos):
        return False
    if infos[0].dim == 1:
        return max(x.lo[0] for x in infos) < min(x.hi[0] for x in infos)
    return interior_point(infos) is not None


def dist_sq_cores(a: CoreInfo, b: CoreInfo) -> Fraction:
    """Exact squared distance between two closed hulls."""
    if cores_intersect((a, b)):
        return _ZERO
    d = a.dim
    if d == 1:
        gap = max(a.lo[0] - b.hi[0], b.lo[0] - a.hi[0])
        return gap * gap
    best = None

    def consider(v):
        nonlocal best
        if best is None or v < best:
            best = v

    for x, y in ((a, b), (b, a)):
        for p in x.points:
            consider(dist_sq_point(p, y) if not y.full else _boundary_dist_sq(p, y))
    if d == 3:
        ea = a.edges or ((a.points[0], a.points[0]),)
        eb = b.edges or ((b.points[0], b.points[0]),)
        for p, q in ea:
            for r, s in eb:
                consider(segment_segment_dist_sq(p, q, r, s))
    return best


def _boundary_dist_sq(p, info: CoreInfo) -> Fraction:
    if info.dim == 2:
        return min(norm_sq(sub(p, closest_on_segment(p, a, b))) for a, b in info.edges)
    if info.dim == 1:
        return min((p[0] - info.lo[0]) ** 2, (p[0] - info.hi[0]) ** 2)
    return min(norm_sq(sub(p, closest_on_triangle(p, *t))) for t in info.triangles)


def halfspace_polytope(facets, d: int):
    """Vertices of {x : a.x <= b} (bounded) by brute-force vertex enumeration."""
    cands = {}
    facets = list(facets)
    for combo in itertools.combinations(range(len(facets)), d):
        M = [list(facets[i][0]) for i in combo]
        rhs = [facets[i][1] for i in combo]
        x = _solve(M, rhs)
        if x is None:
            continue
        if all(dot(a, x) <= b for a, b in facets):
            cands[x] = None
    return list(cands)


def _solve(M, rhs):
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [v / pv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(A[r][n] for r in range(n))


def relint_common(infos) -> bool:
    """Do the relative interiors of the hulls share a point?

    A point lies in the relative interior of conv(P) iff it is a convex
    combination of P with every weight positive, so one LP maximizing the
    smallest weight decides it.
    """
    sizes = [len(x.points) for x in infos]
    nv = sum(sizes) + 1
    d = infos[0].dim
    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    off = 0
    for s in sizes:
        row = [0] * nv
        for j in range(s):
            row[off + j] = 1
            ub = [0] * nv
            ub[off + j] = -1
            ub[-1] = 1
            A_ub.append(ub)
            b_ub.append(0)
        A_eq.append(row)
        b_eq.append(1)
        off += s
    first = infos[0]
    off = sizes[0]
    for x in infos[1:]:
        for c in range(d):
            row = [0] * nv
            for j, p in enumerate(first.points):
                row[j] = p[c]
            for j, p in enumerate(x.points):
                row[off + j] = -p[c]
            A_eq.append(row)
            b_eq.append(0)
        off += len(x.points)
    ub = [0] * nv
    ub[-1] = 1
    A_ub.append(ub)
    b_ub.append(1)
    res = lp.maximize([0] * (nv - 1) + [1], A_ub, b_ub, A_eq, b_eq)
    return res.status == lp.OPTIMAL and res.value > 0
