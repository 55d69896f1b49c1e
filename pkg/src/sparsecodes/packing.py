"""Circle packings of planar graphs.

The graph is embedded (networkx planarity test), every face walk is filled
with a ring of helper vertices and a centre so that the result triangulates
the sphere without adding edges between original vertices, one face centre
is dropped to open a boundary, and radii are found by the angle-sum
relaxation in :mod:`accel`.  Centres are then laid out triangle by
triangle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import networkx as nx
import numpy as np

from . import accel


class NotPlanar(ValueError):
    pass


@dataclass
class Triangulation:
    nverts: int
    triangles: list          # oriented (ccw) vertex triples
    boundary: list           # boundary cycle, in order
    original: int            # vertices 0..original-1 are the graph's own


def _faces(emb: nx.PlanarEmbedding) -> list:
    seen = set()
    faces = []
    for u, v in sorted(emb.edges()):
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.append(face)
    return faces


def triangulate(n: int, edges) -> Triangulation:
    """Stellated triangulation of a connected planar graph on 0..n-1 (n >= 3)."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    ok, emb = nx.check_planarity(g)
    if not ok:
        raise NotPlanar("graph is not planar")
    faces = _faces(emb)
    tris = []
    nxt = n
    outer = max(range(len(faces)), key=lambda f: (len(faces[f]), -f))
    boundary = []
    for f, walk in enumerate(faces):
        k = len(walk)
        ring = list(range(nxt, nxt + k))
        center = nxt + k
        nxt += k + 1
        for t in range(k):
            a, b = walk[t], walk[(t + 1) % k]
            w0, w1 = ring[t], ring[(t + 1) % k]
            tris.append((a, b, w0))
            tris.append((w1, w0, b))
            if f != outer:
                tris.append((center, w0, w1))
        if f == outer:
            boundary = ring
            nxt -= 1  # centre of the outer face is not used
    # all triangles share one orientation; if it is clockwise the layout is
    # simply mirrored, which changes nothing
    return Triangulation(nxt, tris, boundary, n)


def flowers(tri: Triangulation):
    """Petal sequence of each vertex; interior flowers are closed (first petal repeated)."""
    nxt_of = [dict() for _ in range(tri.nverts)]
    for a, b, c in tri.triangles:
        for v, x, y in ((a, b, c), (b, c, a), (c, a, b)):
            if x in nxt_of[v]:
                raise ValueError("inconsistent triangle orientation")
            nxt_of[v][x] = y
    bset = set(tri.boundary)
    out = []
    for v in range(tri.nverts):
        links = nxt_of[v]
        if v in bset:
            targets = set(links.values())
            start = next(x for x in links if x not in targets)
            seq = [start]
            while seq[-1] in links:
                seq.append(links[seq[-1]])
        else:
            start = min(links)
            seq = [start]
            while True:
                seq.append(links[seq[-1]])
                if seq[-1] == start:
                    break
        out.append(seq)
    return out


def _angle(rv, ru, rw):
    a, b, c = rv + ru, rv + rw, ru + rw
    return math.acos(max(-1.0, min(1.0, (a * a + b * b - c * c) / (2 * a * b))))


@dataclass
class RawPacking:
    centers: np.ndarray
    radii: np.ndarray
    residual: float
    sweeps: int


def solve(tri: Triangulation, tol: float = 1e-13, which: str | None = None) -> RawPacking:
    fl = flowers(tri)
    fptr = np.zeros(tri.nverts + 1, dtype=np.int64)
    for v, seq in enumerate(fl):
        fptr[v + 1] = fptr[v] + len(seq)
    flower = np.array([x for seq in fl for x in seq], dtype=np.int64)
    bset = set(tri.boundary)
    kb = len(tri.boundary)
    aims = np.array([math.pi - 2 * math.pi / kb if v in bset else 2 * math.pi for v in range(tri.nverts)])
    closed = np.array([v not in bset for v in range(tri.nverts)])
    r, resid, sweeps = accel.relax_radii(np.ones(tri.nverts), aims, fptr, flower, closed, tol=tol, which=which)
    centers = layout(tri, fl, r)
    return RawPacking(centers, r, float(resid), int(sweeps))


def layout(tri: Triangulation, fl, r) -> np.ndarray:
    """Place centres by walking across triangles from a seed triangle."""
    z = np.full((tri.nverts, 2), np.nan)
    a, b, c = tri.triangles[0]
    z[a] = (0.0, 0.0)
    z[b] = (r[a] + r[b], 0.0)
    _third(z, r, a, b, c)
    by_edge = {}
    for t in tri.triangles:
        for i in range(3):
            by_edge[(t[i], t[(i + 1) % 3])] = t[(i + 2) % 3]
    # breadth-first over triangles; a triangle whose vertices were all
    # placed by other routes must still pass its edges on
    done = {min((a, b, c), (b, c, a), (c, a, b))}
    queue = deque([(a, b), (b, c), (c, a)])
    while queue:
        u, v = queue.popleft()
        w = by_edge.get((v, u))
        if w is None:
            continue
        key = min((v, u, w), (u, w, v), (w, v, u))
        if key in done:
            continue
        done.add(key)
        if np.isnan(z[w, 0]):
            _third(z, r, v, u, w)
        queue.extend([(u, w), (w, v)])
    return z


def _third(z, r, a, b, c):
    """Place c so that (a, b, c) is counterclockwise with the three circles tangent."""
    ang = _angle(r[a], r[b], r[c])
    d = z[b] - z[a]
    base = math.atan2(d[1], d[0])
    z[c] = z[a] + (r[a] + r[c]) * np.array([math.cos(base + ang), math.sin(base + ang)])


def angle_residual(tri: Triangulation, r) -> float:
    fl = flowers(tri)
    bset = set(tri.boundary)
    kb = len(tri.boundary)
    worst = 0.0
    for v, seq in enumerate(fl):
        s = sum(_angle(r[v], r[seq[i]], r[seq[i + 1]]) for i in range(len(seq) - 1))
        aim = math.pi - 2 * math.pi / kb if v in bset else 2 * math.pi
        worst = max(worst, abs(s - aim))
    return worst
