"""Computing the code of an arrangement and certifying constructions.

For an arrangement without triple points the code is fixed by pairwise
data: the empty word (bodies are bounded), every meeting pair, and the
singleton ``{i}`` exactly when body i is nonempty and not inside any single
other body.  The last rule rests on connectedness: the traces of other
bodies on body i are pairwise disjoint and relatively open (or all closed),
so they cannot cover it unless one of them is all of it.

``sample_code`` is an independent one-sided oracle: it only reports words
witnessed by an explicit rational point whose membership is checked exactly.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernel
from ._exact import fmt_scalar
from .bodies import OPEN, Arrangement
from .code import NeuralCode
from .geometry import core_info


class TripleIntersectionPresent(ValueError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"bodies {triple} share a point; the exact path covers 2-sparse arrangements only")


def has_triple_intersection(arr: Arrangement):
    """First triple (lexicographic, 1-based) with a common point, or None."""
    bs = arr.bodies
    n = arr.n
    meet = {}
    for i, j in itertools.combinations(range(n), 2):
        meet[i, j] = kernel.pair_intersects(bs[i], bs[j], arr.topology)
    for i, j, k in itertools.combinations(range(n), 3):
        if meet[i, j] and meet[i, k] and meet[j, k]:
            if kernel.triple_intersects(bs[i], bs[j], bs[k], arr.topology):
                return (i + 1, j + 1, k + 1)
    return None


def compute_code(arr: Arrangement) -> NeuralCode:
    t = has_triple_intersection(arr)
    if t is not None:
        raise TripleIntersectionPresent(t)
    bs = arr.bodies
    sups = {frozenset()}
    for i, j in itertools.combinations(range(arr.n), 2):
        if kernel.pair_intersects(bs[i], bs[j], arr.topology):
            sups.add(frozenset((i + 1, j + 1)))
    for i in range(arr.n):
        if bs[i].is_empty:
            continue
        if not any(j != i and kernel.contains(bs[j], bs[i]) for j in range(arr.n)):
            sups.add(frozenset((i + 1,)))
    return NeuralCode(arr.n, frozenset(sups))


# ---------------------------------------------------------------- sampling

def _seed_points(arr: Arrangement) -> list:
    pts = []
    live = [b for b in arr.bodies if not b.is_empty]
    for b in live:
        inf = core_info(b.core)
        pts.extend(inf.points)
        k = len(inf.points)
        pts.append(tuple(sum(p[c] for p in inf.points) / k for c in range(arr.dim)))
    # inward nudges from boundary features of every pair of meeting bodies
    cands = {}
    for X, Y in itertools.combinations(live, 2):
        if not kernel.pair_intersects(X, Y, arr.topology):
            continue
        if id(X) not in cands:
            cands[id(X)] = kernel.boundary_candidates(X)[:24]
        for p in cands[id(X)]:
            for q in core_info(Y.core).points:
                pts.append(tuple(a + (b - a) * Fraction(1, 64) for a, b in zip(p, q)))
    return pts


def _bbox(arr: Arrangement):
    live = [b for b in arr.bodies if not b.is_empty]
    if not live:
        return np.zeros(arr.dim), np.ones(arr.dim)
    lo = np.min([[float(c) for c in core_info(b.core).lo] for b in live], axis=0)
    hi = np.max([[float(c) for c in core_info(b.core).hi] for b in live], axis=0)
    pad = max(float(np.sqrt(float(b.rho_sq))) for b in live) + 1.0
    return lo - pad, hi + pad


def sample_code(arr: Arrangement, budget: int = 10_000, seed: int = 0) -> NeuralCode:
    """Words seen at seed points and ``budget`` random rational points, each exactly confirmed."""
    n = arr.n
    words = {frozenset()}
    live = [i for i in range(n) if not arr.bodies[i].is_empty]
    if not live:
        return NeuralCode(n, frozenset(words))
    bodies = [arr.bodies[i] for i in live]
    lo, hi = _bbox(arr)
    rng = np.random.default_rng(seed)
    den = 1 << 20
    grid = np.floor((lo + (hi - lo) * rng.random((budget, arr.dim))) * den)
    seeds = _seed_points(arr)
    ns = len(seeds)

    def point(r):
        if r < ns:
            return seeds[r]
        return tuple(Fraction(int(v), den) for v in grid[r - ns])

    # grid / den is exact in binary floating point
    F = np.vstack([np.array([[float(c) for c in p] for p in seeds], dtype=np.float64).reshape(-1, arr.dim),
                   grid / den])
    ex = kernel.excess(F, bodies)
    inside = ex < 0
    if arr.topology != OPEN:
        inside = ex <= 0
    margin = np.abs(ex).min(axis=1)
    keys = np.packbits(inside, axis=1)
    _, group = np.unique(keys, axis=0, return_inverse=True)
    group = group.ravel()
    order = np.lexsort((-margin, group))
    first = order[np.r_[True, group[order][1:] != group[order][:-1]]]
    best = {keys[r].tobytes(): int(r) for r in first}
    strict = arr.topology == OPEN
    tried = set()
    for r in best.values():
        p = point(r)
        mem = frozenset(live[k] + 1 for k, b in enumerate(bodies) if kernel.member(p, b, strict))
        words.add(mem)
        tried.add(r)
    # near-boundary points: confirm any float word not yet seen exactly
    for kb, r in best.items():
        mem_f = frozenset(live[k] + 1 for k in np.nonzero(inside[r])[0])
        if mem_f in words:
            continue
        for rr in np.nonzero((keys == np.frombuffer(kb, dtype=np.uint8)).all(axis=1))[0][:16]:
            if rr in tried:
                continue
            p = point(rr)
            mem = frozenset(live[k] + 1 for k, b in enumerate(bodies) if kernel.member(p, b, strict))
            words.add(mem)
            if mem == mem_f:
                break
    return NeuralCode(n, frozenset(words))


# ------------------------------------------------------------ certificates

def digest(arr: Arrangement) -> str:
    return hashlib.sha256(json.dumps(arr.to_json(), sort_keys=True).encode()).hexdigest()


def _fmt(x):
    if x is None:
        return None
    if x == kernel.INF:
        return "inf"
    return fmt_scalar(Fraction(x))


@dataclass
class RealizationCertificate:
    digest: str
    passed: bool
    method: str
    claimed: NeuralCode
    computed: NeuralCode | None
    sampled: NeuralCode | None
    relations: kernel.RelationMatrix | None
    margins: dict = field(default_factory=dict)
    diff: dict = field(default_factory=dict)
    triple: tuple | None = None

    def to_json(self) -> dict:
        return {
            "digest": self.digest,
            "pass": self.passed,
            "method": self.method,
            "claimed": self.claimed.to_json(),
            "computed": self.computed.to_json() if self.computed else None,
            "sampled": self.sampled.to_json() if self.sampled else None,
            "relations": self.relations.to_json() if self.relations else None,
            "margins": {k: _fmt(v) for k, v in self.margins.items()},
            "diff": self.diff,
            "triple": list(self.triple) if self.triple else None,
        }


def margins(arr: Arrangement, free_boundary: bool = True) -> dict:
    """Slack of the decisions the code depends on.

    ``pair_gap``: smallest gap between disjoint bodies; ``lens_depth``: for
    curved bodies, smallest overlap ``r1 + r2 - dist(cores)`` of meeting
    pairs; ``triple_clearance``: smallest ``min_x max_l dist(x, body_l)``
    over triples whose pairs all meet; ``free_boundary``: smallest clearance
    of a boundary point of a body that is inside no other body.  None marks
    a quantity decided by an exact predicate with no slack to report (for
    instance touching closed bodies) or with nothing to measure.
    """
    from ._exact import sqrt_lower, sqrt_upper
    from .geometry import dist_sq_cores

    bs = arr.bodies
    live = [i for i in range(arr.n) if not bs[i].is_empty]
    gap = lens = trip = free = None
    meet = {}
    for i, j in itertools.combinations(live, 2):
        m = meet[i, j] = kernel.pair_intersects(bs[i], bs[j], arr.topology)
        if not m:
            g = kernel.gap_lower(bs[i], bs[j])
            if g > 0:
                gap = g if gap is None else min(gap, g)
        elif bs[i].rho_sq or bs[j].rho_sq:
            D = dist_sq_cores(core_info(bs[i].core), core_info(bs[j].core))
            depth = sqrt_lower(bs[i].rho_sq, 48) + sqrt_lower(bs[j].rho_sq, 48) - sqrt_upper(D, 48)
            if depth > 0:
                lens = depth if lens is None else min(lens, depth)
    for i, j, k in itertools.combinations(live, 3):
        if meet[i, j] and meet[i, k] and meet[j, k]:
            c = kernel.triple_clearance(bs[i], bs[j], bs[k])
            trip = c if trip is None else min(trip, c)
    if free_boundary:
        for i in live:
            if any(j != i and kernel.contains(bs[j], bs[i]) for j in range(arr.n)):
                continue
            try:
                m = kernel.boundary_free_point(arr, i + 1)[1]
            except kernel.NoFreeBoundary:
                m = Fraction(0)
            free = m if free is None else min(free, m)
    return {"pair_gap": gap, "lens_depth": lens, "triple_clearance": trip, "free_boundary": free}


def certify(arr: Arrangement, claimed: NeuralCode, budget: int = 10_000, seed: int = 0,
            detail: bool = True) -> RealizationCertificate:
    """Pass iff no triple point, exact code equals ``claimed``, and sampling finds nothing extra."""
    dg = digest(arr)
    t = has_triple_intersection(arr)
    if t is not None:
        sampled = sample_code(arr, budget, seed)
        return RealizationCertificate(dg, False, "SampledOnly", claimed, None, sampled, None,
                                      {}, _diff(claimed, sampled), t)
    computed = compute_code(arr)
    sampled = sample_code(arr, budget, seed)
    ok = computed == claimed and sampled.supports <= claimed.supports
    diff = _diff(claimed, computed)
    extra = sorted(_w(s, arr.n) for s in sampled.supports - claimed.supports)
    if extra:
        diff["sampled_not_claimed"] = extra
    rel = kernel.relation_matrix(arr) if detail else None
    mg = margins(arr, free_boundary=detail)
    return RealizationCertificate(dg, ok, "Exact2Sparse", claimed, computed, sampled, rel, mg, diff)


def _w(s, n):
    return "".join("1" if i + 1 in s else "0" for i in range(n))


def _diff(claimed: NeuralCode, got: NeuralCode) -> dict:
    n = claimed.n
    return {
        "missing": sorted(_w(s, n) for s in claimed.supports - got.supports),
        "unexpected": sorted(_w(s, n) for s in got.supports - claimed.supports),
    }
