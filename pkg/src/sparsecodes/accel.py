"""Floating-point hot loops.

Two kernels dominate runtime: batched signed distances from many points to
a handful of polytope cores (sampling oracle, branch-and-bound clearances)
and the angle-sum relaxation of the circle packing solver.  Each has a
numba ``@njit`` implementation and a pure-numpy fallback.  The fallback is
selected when numba is missing or ``SPARSECODES_DISABLE_JIT`` (or numba's
own ``NUMBA_DISABLE_JIT``) is set to a truthy value.

Nothing computed here is trusted on its own: callers re-check every
decision with exact arithmetic or with an explicit error slack.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_FLAG = os.environ.get("SPARSECODES_DISABLE_JIT", "") or os.environ.get("NUMBA_DISABLE_JIT", "")
USE_NUMBA = HAVE_NUMBA and _FLAG.strip().lower() not in ("1", "true", "yes", "on")


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _resolve(name: str | None) -> str:
    if name is None:
        return backend()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return name


# --------------------------------------------------------------- core packs

@dataclass(frozen=True)
class CorePack:
    """Flattened float features of several cores, CSR-indexed by body."""

    d: int
    pts: np.ndarray
    pt_ptr: np.ndarray
    segs: np.ndarray
    seg_ptr: np.ndarray
    tris: np.ndarray
    tri_ptr: np.ndarray
    fac_n: np.ndarray
    fac_b: np.ndarray
    fac_ptr: np.ndarray
    full: np.ndarray
    rho: np.ndarray
    lo: np.ndarray
    hi: np.ndarray

    @property
    def nbodies(self) -> int:
        return len(self.full)


def make_pack(infos, rhos, d: int) -> CorePack:
    """Build a pack from ``geometry.CoreInfo`` objects and float radii."""
    pts, segs, tris, fn, fb = [], [], [], [], []
    pp, sp, tp, fp = [0], [0], [0], [0]
    full, lo, hi = [], [], []
    for info in infos:
        lo.append([float(c) for c in info.lo])
        hi.append([float(c) for c in info.hi])
        pts += [[float(c) for c in p] for p in info.points]
        segs += [[[float(c) for c in p] for p in e] for e in info.edges]
        tris += [[[float(c) for c in p] for p in t] for t in info.triangles]
        if info.full:
            for a, b in info.facets:
                na = math.sqrt(sum(float(c) ** 2 for c in a))
                fn.append([float(c) / na for c in a])
                fb.append(float(b) / na)
        pp.append(len(pts))
        sp.append(len(segs))
        tp.append(len(tris))
        fp.append(len(fb))
        full.append(info.full)
    return CorePack(
        d,
        np.asarray(pts, dtype=np.float64).reshape(-1, d),
        np.asarray(pp, dtype=np.int64),
        np.asarray(segs, dtype=np.float64).reshape(-1, 2, d),
        np.asarray(sp, dtype=np.int64),
        np.asarray(tris, dtype=np.float64).reshape(-1, 3, d),
        np.asarray(tp, dtype=np.int64),
        np.asarray(fn, dtype=np.float64).reshape(-1, d),
        np.asarray(fb, dtype=np.float64),
        np.asarray(fp, dtype=np.int64),
        np.asarray(full, dtype=np.bool_),
        np.asarray(rhos, dtype=np.float64),
        np.asarray(lo, dtype=np.float64).reshape(-1, d),
        np.asarray(hi, dtype=np.float64).reshape(-1, d),
    )


# --------------------------------------------------------------- numpy path

def _np_seg_dist(P, a, b):
    ab = b - a
    den = ab @ ab
    if den == 0.0:
        return np.sqrt(((P - a) ** 2).sum(axis=1))
    t = np.clip(((P - a) @ ab) / den, 0.0, 1.0)
    C = a + t[:, None] * ab
    return np.sqrt(((P - C) ** 2).sum(axis=1))


def _np_tri_dist(P, a, b, c):
    # barycentric projection with fallback to the three edges
    ab, ac = b - a, c - a
    d00, d01, d11 = ab @ ab, ab @ ac, ac @ ac
    den = d00 * d11 - d01 * d01
    AP = P - a
    d20, d21 = AP @ ab, AP @ ac
    v = (d11 * d20 - d01 * d21) / den
    w = (d00 * d21 - d01 * d20) / den
    inside = (v >= 0) & (w >= 0) & (v + w <= 1)
    proj = a + v[:, None] * ab + w[:, None] * ac
    dist_in = np.sqrt(((P - proj) ** 2).sum(axis=1))
    edge = np.minimum(np.minimum(_np_seg_dist(P, a, b), _np_seg_dist(P, b, c)), _np_seg_dist(P, a, c))
    return np.where(inside, dist_in, edge)


def _np_signed_dist(P, pk: CorePack, early=True):
    N = P.shape[0]
    out = np.empty((N, pk.nbodies))
    for k in range(pk.nbodies):
        gap = np.sqrt((np.maximum(np.maximum(pk.lo[k] - P, P - pk.hi[k]), 0.0) ** 2).sum(axis=1))
        far = (gap > pk.rho[k]) & early
        if far.all():
            out[:, k] = gap
            continue
        best = np.full(N, np.inf)
        for i in range(pk.pt_ptr[k], pk.pt_ptr[k + 1]):
            best = np.minimum(best, np.sqrt(((P - pk.pts[i]) ** 2).sum(axis=1)))
        for i in range(pk.seg_ptr[k], pk.seg_ptr[k + 1]):
            best = np.minimum(best, _np_seg_dist(P, pk.segs[i, 0], pk.segs[i, 1]))
        for i in range(pk.tri_ptr[k], pk.tri_ptr[k + 1]):
            best = np.minimum(best, _np_tri_dist(P, pk.tris[i, 0], pk.tris[i, 1], pk.tris[i, 2]))
        if pk.full[k]:
            f0, f1 = pk.fac_ptr[k], pk.fac_ptr[k + 1]
            excess = (P @ pk.fac_n[f0:f1].T - pk.fac_b[f0:f1]).max(axis=1)
            best = np.where(excess <= 0, excess, best)
        out[:, k] = np.where(far, gap, best)
    return out


def _np_relax(radii, aims, fptr, flower, closed, tol, max_sweeps):
    r = radii.copy()
    nv = len(r)
    # triangle list per vertex (v, u, w) flattened for vectorized angle sums
    vs, us, ws = [], [], []
    for v in range(nv):
        for j in range(fptr[v], fptr[v + 1] - 1):
            vs.append(v)
            us.append(flower[j])
            ws.append(flower[j + 1])
    vs, us, ws = np.array(vs), np.array(us), np.array(ws)
    k = np.diff(fptr) - 1
    active = aims > 0
    resid = np.inf
    sweeps = 0
    while sweeps < max_sweeps:
        rv, ru, rw = r[vs], r[us], r[ws]
        a, b, c = rv + ru, rv + rw, ru + rw
        cosang = np.clip((a * a + b * b - c * c) / (2 * a * b), -1.0, 1.0)
        theta = np.bincount(vs, weights=np.arccos(cosang), minlength=nv)
        err = np.abs(theta - aims)
        resid = err[active].max() if active.any() else 0.0
        if resid < tol:
            break
        beta = np.sin(theta / (2 * k))
        delta = np.sin(aims / (2 * k))
        rhat = r * beta / (1 - beta)
        newr = rhat * (1 - delta) / delta
        r = np.where(active, newr, r)
        r /= r.max()
        sweeps += 1
    return r, resid, sweeps


# --------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_seg_dist(P, a, b):
        d = P.shape[0]
        den = 0.0
        t = 0.0
        for i in range(d):
            e = b[i] - a[i]
            den += e * e
            t += (P[i] - a[i]) * e
        if den > 0.0:
            t /= den
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
        else:
            t = 0.0
        s = 0.0
        for i in range(d):
            q = P[i] - (a[i] + t * (b[i] - a[i]))
            s += q * q
        return math.sqrt(s)

    @njit(cache=True)
    def _nb_tri_dist(P, a, b, c):
        d = P.shape[0]
        d00 = d01 = d11 = d20 = d21 = 0.0
        for i in range(d):
            ab = b[i] - a[i]
            ac = c[i] - a[i]
            ap = P[i] - a[i]
            d00 += ab * ab
            d01 += ab * ac
            d11 += ac * ac
            d20 += ap * ab
            d21 += ap * ac
        den = d00 * d11 - d01 * d01
        if den > 0.0:
            v = (d11 * d20 - d01 * d21) / den
            w = (d00 * d21 - d01 * d20) / den
            if v >= 0.0 and w >= 0.0 and v + w <= 1.0:
                s = 0.0
                for i in range(d):
                    q = P[i] - (a[i] + v * (b[i] - a[i]) + w * (c[i] - a[i]))
                    s += q * q
                return math.sqrt(s)
        e1 = _nb_seg_dist(P, a, b)
        e2 = _nb_seg_dist(P, b, c)
        e3 = _nb_seg_dist(P, a, c)
        return min(e1, min(e2, e3))

    @njit(cache=True)
    def _nb_signed_dist(P, pts, pt_ptr, segs, seg_ptr, tris, tri_ptr, fac_n, fac_b, fac_ptr, full, rho, lo, hi, early):
        N = P.shape[0]
        B = full.shape[0]
        d = P.shape[1]
        out = np.empty((N, B))
        for n in range(N):
            x = P[n]
            for k in range(B):
                g = 0.0
                for i in range(d):
                    q = lo[k, i] - x[i]
                    if x[i] - hi[k, i] > q:
                        q = x[i] - hi[k, i]
                    if q > 0.0:
                        g += q * q
                g = math.sqrt(g)
                if early and g > rho[k]:
                    out[n, k] = g
                    continue
                if full[k]:
                    ex = -np.inf
                    for f in range(fac_ptr[k], fac_ptr[k + 1]):
                        s = -fac_b[f]
                        for i in range(d):
                            s += fac_n[f, i] * x[i]
                        if s > ex:
                            ex = s
                    if ex <= 0.0:
                        out[n, k] = ex
                        continue
                best = np.inf
                for j in range(pt_ptr[k], pt_ptr[k + 1]):
                    s = 0.0
                    for i in range(d):
                        q = x[i] - pts[j, i]
                        s += q * q
                    s = math.sqrt(s)
                    if s < best:
                        best = s
                for j in range(seg_ptr[k], seg_ptr[k + 1]):
                    s = _nb_seg_dist(x, segs[j, 0], segs[j, 1])
                    if s < best:
                        best = s
                for j in range(tri_ptr[k], tri_ptr[k + 1]):
                    s = _nb_tri_dist(x, tris[j, 0], tris[j, 1], tris[j, 2])
                    if s < best:
                        best = s
                out[n, k] = best
        return out

    @njit(cache=True)
    def _nb_relax(radii, aims, fptr, flower, closed, tol, max_sweeps):
        r = radii.copy()
        nv = r.shape[0]
        resid = np.inf
        sweeps = 0
        while sweeps < max_sweeps:
            resid = 0.0
            for v in range(nv):
                if aims[v] <= 0.0:
                    continue
                theta = 0.0
                rv = r[v]
                for j in range(fptr[v], fptr[v + 1] - 1):
                    ru = r[flower[j]]
                    rw = r[flower[j + 1]]
                    a = rv + ru
                    b = rv + rw
                    c = ru + rw
                    cs = (a * a + b * b - c * c) / (2.0 * a * b)
                    if cs > 1.0:
                        cs = 1.0
                    elif cs < -1.0:
                        cs = -1.0
                    theta += math.acos(cs)
                e = abs(theta - aims[v])
                if e > resid:
                    resid = e
                k = fptr[v + 1] - fptr[v] - 1
                beta = math.sin(theta / (2.0 * k))
                delta = math.sin(aims[v] / (2.0 * k))
                rhat = rv * beta / (1.0 - beta)
                r[v] = rhat * (1.0 - delta) / delta
            m = r.max()
            for v in range(nv):
                r[v] /= m
            if resid < tol:
                break
            sweeps += 1
        return r, resid, sweeps


# --------------------------------------------------------------- public API

def signed_distances(points: np.ndarray, pack: CorePack, which: str | None = None, early: bool = True) -> np.ndarray:
    """Signed distance of each point to each core (negative inside full-dimensional cores).

    Points farther than ``rho`` from a core's bounding box get the box
    distance instead, a positive lower bound that keeps the sign of
    ``value - rho`` right.  Subtracting ``pack.rho`` gives the signed
    distance to the thickened body.  ``early=False`` disables the shortcut
    when true values are needed (upper bounds in branch and bound).
    """
    P = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, pack.d)
    if _resolve(which) == "numba":
        return _nb_signed_dist(
            P, pack.pts, pack.pt_ptr, pack.segs, pack.seg_ptr, pack.tris, pack.tri_ptr,
            pack.fac_n, pack.fac_b, pack.fac_ptr, pack.full, pack.rho, pack.lo, pack.hi, early,
        )
    return _np_signed_dist(P, pack, early)


def relax_radii(radii, aims, fptr, flower, closed, tol=1e-13, max_sweeps=200000, which: str | None = None):
    """Iterate the uniform-neighbour radius update until angle sums hit their aims.

    Vertices with ``aims <= 0`` keep their radius.  Returns (radii, residual, sweeps).
    """
    args = (
        np.asarray(radii, dtype=np.float64),
        np.asarray(aims, dtype=np.float64),
        np.asarray(fptr, dtype=np.int64),
        np.asarray(flower, dtype=np.int64),
        np.asarray(closed, dtype=np.bool_),
        float(tol),
        int(max_sweeps),
    )
    if _resolve(which) == "numba":
        return _nb_relax(*args)
    return _np_relax(*args)
