"""Planar realizations and the reductions between graph and code realizations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np

from . import kernel, packing
from ._exact import Q, sqrt_lower, sqrt_upper
from .bodies import CLOSED, OPEN, Arrangement, Body, Disk, Empty, Interval, Polygon, Polytope3, Segment, ball
from .code import Graph, NeuralCode, code_graph, complete_multipartite_graph, graph_full_code, \
    is_intersection_complete, is_k_sparse
from .geometry import core_info, halfspace_polytope, hull2
from .packing import NotPlanar
from .transforms import choose_trim_epsilon, trim_arrangement
from .verify import compute_code


class SnapFailed(RuntimeError):
    pass


class NotNested(ValueError):
    pass


class CodeMismatch(ValueError):
    pass


# ------------------------------------------------------------ circle packing

@dataclass
class PackingResult:
    centers: np.ndarray        # float centres of the graph's own circles
    radii: np.ndarray
    residual: float
    snapped: Arrangement       # rational open disks, radii already scaled by (1 + delta)
    margin: Fraction
    delta: Fraction


def _component_packing(n, edges):
    """Float centres/radii for one connected component with vertices 0..n-1."""
    if n == 1:
        return np.zeros((1, 2)), np.ones(1), 0.0
    if n == 2:
        return np.array([[-1.0, 0.0], [1.0, 0.0]]), np.ones(2), 0.0
    tri = packing.triangulate(n, edges)
    raw = packing.solve(tri)
    return raw.centers[:n], raw.radii[:n], raw.residual


def pack_graph(G: Graph) -> PackingResult:
    """Circle packing of ``G`` whose contact graph (on the original vertices) is ``G``."""
    if G.n == 0:
        raise ValueError("graph has no vertices")
    g = G.to_networkx()
    if not nx.check_planarity(g)[0]:
        raise NotPlanar("graph is not planar")
    comps = [sorted(c) for c in nx.connected_components(g)]
    comps.sort()
    centers = np.zeros((G.n, 2))
    radii = np.zeros(G.n)
    residual = 0.0
    parts = []
    for comp in comps:
        idx = {v: k for k, v in enumerate(comp)}
        es = [(idx[a], idx[b]) for a, b in G.sorted_edges() if a in idx]
        z, r, res = _component_packing(len(comp), es)
        residual = max(residual, res)
        z = (z - z.mean(axis=0)) / r.max()
        r = r / r.max()
        parts.append((comp, z, r))
    diam = max(float((np.abs(z).max(axis=1) + r).max()) * 2 for _, z, r in parts)
    x = 0.0
    for comp, z, r in parts:
        lo = (z[:, 0] - r).min()
        for k, v in enumerate(comp):
            centers[v - 1] = z[k] + np.array([x - lo, 0.0])
            radii[v - 1] = r[k]
        x += (z[:, 0] + r).max() - lo + 4 * diam
    snapped, margin, delta = _snap(G, centers, radii)
    return PackingResult(centers, radii, residual, snapped, margin, delta)


def _snap(G: Graph, centers, radii):
    """Rational disks, radii scaled by (1 + delta), certified against the graph's full code."""
    want = graph_full_code(G)
    scale = 1 << 32
    c = [tuple(Fraction(round(float(x) * scale), scale) for x in p) for p in centers]
    r = [Fraction(round(float(x) * scale), scale) for x in radii]
    n = G.n
    edges = G.edges
    # largest delta that cannot reach a non-adjacent pair (float estimate)
    room = math.inf
    for i in range(n):
        for j in range(i + 1, n):
            if frozenset((i + 1, j + 1)) not in edges:
                d = float(np.hypot(*(np.array(centers[i]) - centers[j])))
                room = min(room, d / (radii[i] + radii[j]) - 1)
    delta = Fraction(min(room / 4, 0.01)).limit_denominator(1 << 20) if room < math.inf else Fraction(1, 100)
    for _ in range(30):
        bodies = tuple(Disk(c[i], (r[i] * (1 + delta)) ** 2) for i in range(n))
        arr = Arrangement(2, OPEN, bodies)
        try:
            ok = compute_code(arr) == want
        except (kernel.Indeterminate, ValueError):
            ok = False
        if ok:
            from .verify import margins

            mg = margins(arr, free_boundary=False)
            vals = [v for v in (mg["pair_gap"], mg["lens_depth"], mg["triple_clearance"]) if v is not None]
            return arr, min(vals) if vals else Fraction(1), delta
        delta /= 2
    raise SnapFailed("no scaling factor reproduced the graph code after snapping")


def realize_planar(G: Graph) -> Arrangement:
    """Open disks realizing the full code of a planar graph."""
    return pack_graph(G).snapped


# ------------------------------------------------------------ segment families

def _segment(a, b):
    return Segment(tuple(Q(x) for x in a), tuple(Q(x) for x in b))


def realize_complete_multipartite(parts) -> Arrangement:
    """Closed segments realizing the full code of ``K_{parts}``.

    Base segment i runs from (i, 0) to (0, k+1-i); the members of part i are
    horizontal translates of it spaced by tau.
    """
    parts = list(parts)
    if not parts or any(p < 1 for p in parts):
        raise ValueError("parts must be a nonempty list of positive integers")
    k = len(parts)
    N = sum(parts)
    want = graph_full_code(complete_multipartite_graph(parts))
    # every crossing of base segments sits at parameter distance >= 1/(k+1) from the ends
    tau = Fraction(1, (k + 1) * 4 * N * N * k)
    for _ in range(20):
        bodies = []
        for i, size in enumerate(parts, start=1):
            for t in range(size):
                s = t * tau
                bodies.append(_segment((i + s, 0), (s, k + 1 - i)))
        arr = Arrangement(2, CLOSED, tuple(bodies))
        if compute_code(arr) == want:
            return arr
        tau /= 2
    raise RuntimeError("translate spacing could not be certified")


def multipartite_spacing(parts) -> Fraction:
    k = len(parts)
    N = sum(parts)
    return Fraction(1, (k + 1) * 4 * N * N * k)


def realize_nested(n: int, neighborhoods) -> Arrangement:
    """Closed segments for ``K_n`` plus one extra vertex per nested neighbourhood.

    Core vertices keep labels 1..n; the extra vertex for ``neighborhoods[s]``
    gets label ``n + 1 + s``.
    """
    hoods = [frozenset(h) for h in neighborhoods]
    for h in hoods:
        if any(not 1 <= v <= n for v in h):
            raise ValueError("neighbourhood vertex outside 1..n")
    order = sorted(range(len(hoods)), key=lambda s: (len(hoods[s]), s))
    for a, b in zip(order, order[1:]):
        if not hoods[a] <= hoods[b]:
            raise NotNested(f"neighbourhoods {sorted(hoods[a])} and {sorted(hoods[b])} are not nested")
    # positions: vertices of smaller neighbourhoods first
    pos = {}
    for s in order:
        for v in sorted(hoods[s]):
            pos.setdefault(v, len(pos) + 1)
    for v in range(1, n + 1):
        pos.setdefault(v, len(pos) + 1)
    k = len(hoods)
    r = len(hoods[order[-1]]) if hoods else 0
    L = n + 1

    def x_at(j, y):
        return Fraction(j) * (1 - Fraction(y) / (L - j))

    bodies: list = [None] * (n + k)
    for v in range(1, n + 1):
        j = pos[v]
        low = (x_at(j, -k), -k) if j <= r and k > 0 else (j, 0)
        bodies[v - 1] = _segment(low, (0, L - j))
    for rank, s in enumerate(order, start=1):
        y = -rank
        m = len(hoods[s])
        xs = [x_at(j, y) for j in range(1, r + 1)]
        if m == 0:
            a, b = xs[0] - 1 if xs else Fraction(-1), (xs[0] if xs else Fraction(0)) - Fraction(1, 2)
        else:
            a = xs[0] - Fraction(1, 2)
            b = (xs[m - 1] + xs[m]) / 2 if m < r else xs[r - 1] + Fraction(1, 2)
        bodies[n + s] = _segment((a, y), (b, y))
    return Arrangement(2, CLOSED, tuple(bodies))


def nested_graph(n: int, neighborhoods) -> Graph:
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    for s, h in enumerate(neighborhoods):
        pairs += [(v, n + 1 + s) for v in h]
    return Graph.from_pairs(n + len(neighborhoods), pairs)


# ------------------------------------------------------- graph <-> code

def _meet_body(X: Body, Y: Body, topology) -> Body:
    """A body inside X and Y that meets exactly what their intersection meets."""
    if X.rho_sq == 0 and Y.rho_sq == 0:
        a, b = core_info(X.core), core_info(Y.core)
        if a.full and b.full:
            d = a.dim
            if d == 1:
                return Interval(max(a.lo[0], b.lo[0]), min(a.hi[0], b.hi[0]))
            vs = halfspace_polytope(list(a.facets) + list(b.facets), d)
            if d == 2:
                return Polygon(tuple(hull2(vs)))
            return Polytope3(tuple(vs))
        if topology == CLOSED:
            from .geometry import common_point
            from .bodies import point_body

            p = common_point((a, b))
            if p is not None:
                return point_body(p)
    if X.rho_sq > 0 and Y.rho_sq > 0:
        from .geometry import common_point

        p = common_point((core_info(X.core), core_info(Y.core)))
        if p is not None:
            return ball(p, min(sqrt_lower(X.rho_sq, 32), sqrt_lower(Y.rho_sq, 32)) / 2)
    w = kernel.witness_ball([X, Y])
    if w is None:
        raise kernel.Indeterminate("no rational ball found inside the intersection")
    return ball(*w)


def graph_to_code_realization(arr: Arrangement, C: NeuralCode) -> Arrangement:
    """Shrink bodies whose singleton is missing from ``C`` so the arrangement realizes ``C``."""
    if not is_k_sparse(C, 2) or not is_intersection_complete(C):
        raise ValueError("code must be 2-sparse and intersection-complete")
    if C.n != arr.n:
        raise CodeMismatch(f"code has {C.n} neurons, arrangement has {arr.n} bodies")
    if compute_code(arr) != graph_full_code(code_graph(C)):
        raise CodeMismatch("arrangement does not realize the code's graph")
    out = arr
    for i in range(1, C.n + 1):
        if frozenset((i,)) in C.supports:
            continue
        partners = [j for j in range(1, C.n + 1) if frozenset((i, j)) in C.supports]
        if not partners:
            out = out.replace(i, Empty(arr.dim))
            continue
        j = partners[0]
        X, Y = out.body(i), out.body(j)
        both = frozenset((j,)) not in C.supports
        if kernel.contains(Y, X) and not (both and not kernel.contains(X, Y)):
            continue
        M = _meet_body(X, Y, arr.topology)
        out = out.replace(i, M)
        if both:
            # neither neuron fires alone, so the two fields coincide
            out = out.replace(j, M)
    return out


def _far_ball(arr: Arrangement, k: int) -> Body:
    live = [b for b in arr.bodies if not b.is_empty]
    if live:
        hi = max(core_info(b.core).hi[0] + sqrt_upper(b.rho_sq, 16) for b in live)
    else:
        hi = Fraction(0)
    c = [Fraction(0)] * arr.dim
    c[0] = Fraction(math.ceil(hi)) + 2 + 3 * k
    return ball(tuple(c), Fraction(1, 2))


def _extent(X: Body) -> Fraction:
    inf = core_info(X.core)
    w = min(h - l for l, h in zip(inf.lo, inf.hi))
    return w + sqrt_lower(X.rho_sq, 16)


def code_to_graph_realization(arr: Arrangement) -> Arrangement:
    """Grow every missing singleton so that the code becomes its graph's full code."""
    if arr.topology != OPEN:
        raise ValueError("code_to_graph_realization needs an open arrangement")
    C = compute_code(arr)
    want = graph_full_code(code_graph(C))
    cur = arr
    trimmed = False
    for _ in range(4 * arr.n + 4):
        code = compute_code(cur)
        if code == want:
            return cur
        i = next(v for v in range(1, arr.n + 1) if frozenset((v,)) not in code.supports)
        X = cur.body(i)
        if X.is_empty:
            cur = cur.replace(i, _far_ball(cur, i))
            continue
        j = next(k for k in range(1, arr.n + 1) if k != i and kernel.contains(cur.body(k), X))
        Y = cur.body(j)
        if kernel.contains(X, Y):
            w = kernel.witness_ball([Y])
            cur = cur.replace(j, ball(w[0], w[1] / 2))
            continue
        rest = cur.replace(i, Empty(arr.dim))
        try:
            p, m = kernel.boundary_free_point(rest, j)
        except kernel.NoFreeBoundary:
            if trimmed:
                raise
            cur = trim_arrangement(cur, choose_trim_epsilon(cur))
            trimmed = True
            continue
        s = _extent(Y) / 4
        if m != kernel.INF:
            s = min(s, Fraction(m) / 2)
        target = code.supports | {frozenset((i,))}
        for _ in range(30):
            cand = cur.replace(i, ball(p, s))
            if compute_code(cand).supports == target:
                cur = cand
                break
            s /= 2
        else:
            raise kernel.Indeterminate(f"could not place a free ball for body {i}")
    raise RuntimeError("singleton repair did not converge")
