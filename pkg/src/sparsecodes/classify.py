"""Bounds on the embedding dimension of 2-sparse codes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .bodies import OPEN, Arrangement, Empty, Interval
from .code import (
    Graph,
    NeuralCode,
    NotTwoSparse,
    code_graph,
    graph_full_code,
    intersection_violation,
    is_k_sparse,
    word_of,
)

INFINITY = math.inf
MAX_INTERVAL_NEURONS = 7


class TooManyNeurons(ValueError):
    pass


# ---------------------------------------------------------------- planarity

@dataclass
class Planarity:
    planar: bool
    rotation: dict | None = None         # vertex -> clockwise neighbour order
    kuratowski: Graph | None = None      # subgraph homeomorphic to K5 or K3,3

    def __bool__(self):
        return self.planar

    def to_json(self):
        if self.planar:
            return {"planar": True, "rotation": {str(v): r for v, r in sorted(self.rotation.items())}}
        return {"planar": False, "kuratowski": self.kuratowski.to_json()}


def is_planar(G: Graph) -> Planarity:
    ok, cert = nx.check_planarity(G.to_networkx(), counterexample=True)
    if ok:
        return Planarity(True, rotation={v: list(cert.neighbors_cw_order(v)) for v in cert.nodes})
    sub = Graph.from_pairs(G.n, cert.edges())
    return Planarity(False, kuratowski=sub)


# ---------------------------------------------------------- subdivisions

@dataclass(frozen=True)
class Subdivision:
    base: Graph
    branch: tuple          # original labels of base vertices 1..m
    subdividers: tuple     # the set W, sorted


def subdivision_structure(G: Graph) -> Subdivision | None:
    """The largest W of degree-2 vertices such that every edge has exactly one end in W."""
    g = G.to_networkx()
    W = []
    for comp in sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0]):
        if len(comp) == 1:
            continue
        sub = g.subgraph(comp)
        if not nx.is_bipartite(sub):
            return None
        side = nx.bipartite.color(sub)
        classes = [sorted(v for v in comp if side[v] == c) for c in (0, 1)]
        good = []
        for cls in classes:
            if all(g.degree(v) == 2 for v in cls):
                pairs = [frozenset(g.neighbors(v)) for v in cls]
                if len(set(pairs)) == len(pairs):
                    good.append(cls)
        if not good:
            return None
        good.sort(key=lambda c: (-len(c), c))
        W.extend(good[0])
    W = sorted(W)
    wset = set(W)
    branch = tuple(v for v in G.vertices if v not in wset)
    idx = {v: k + 1 for k, v in enumerate(branch)}
    base = Graph.from_pairs(len(branch), [tuple(idx[u] for u in g.neighbors(w)) for w in W])
    return Subdivision(base, branch, tuple(W))


def detect_full_subdivision(G: Graph) -> Graph | None:
    s = subdivision_structure(G)
    return s.base if s else None


# ---------------------------------------------------------- interval search

def interval_search(C: NeuralCode) -> Arrangement | None:
    """An open-interval realization of ``C``, or None if none exists.

    Endpoints are swept left to right.  Each step puts some right endpoints
    and some left endpoints at one new coordinate; the point itself sees
    the intervals that stay open, the gap after it sees those plus the newly
    opened ones.  Every realization's sorted endpoint list is such a
    sequence, so exhausting them is a proof of nonexistence.
    """
    if not is_k_sparse(C, 2):
        raise NotTwoSparse("interval search needs a 2-sparse code")
    n = C.n
    if n > MAX_INTERVAL_NEURONS:
        raise TooManyNeurons(f"{n} neurons; exhaustive interval search is capped at {MAX_INTERVAL_NEURONS}")
    if intersection_violation(C) is not None:
        return None
    sups = C.supports
    live = frozenset().union(*sups)
    target = frozenset(sups)
    dead = set()

    def subsets(s):
        s = sorted(s)
        for m in range(1 << len(s)):
            yield frozenset(s[k] for k in range(len(s)) if m >> k & 1)

    def dfs(active, todo, seen, steps):
        if not todo and not active:
            return steps if seen == target else None
        key = (active, todo, seen)
        if key in dead:
            return None
        done = live - todo - active
        if any(w & done for w in target - seen):
            dead.add(key)
            return None
        for closes in subsets(active):
            at = active - closes
            if at not in sups:
                continue
            room = 2 - len(at)
            for opens in subsets(todo):
                if not closes and not opens:
                    continue
                if len(opens) > room:
                    continue
                after = at | opens
                if after not in sups:
                    continue
                got = dfs(after, todo - opens, seen | {at, after}, steps + [(closes, opens)])
                if got is not None:
                    return got
        dead.add(key)
        return None

    steps = dfs(frozenset(), live, frozenset({frozenset()}), [])
    if steps is None:
        return None
    lo, hi = {}, {}
    for x, (closes, opens) in enumerate(steps):
        for i in closes:
            hi[i] = x
        for i in opens:
            lo[i] = x
    bodies = tuple(Interval(Fraction(lo[i]), Fraction(hi[i])) if i in live else Empty(1)
                   for i in range(1, n + 1))
    return Arrangement(1, OPEN, bodies)


# ---------------------------------------------------- construction families

def multipartite_parts(G: Graph):
    """Parts of ``G`` if it is complete multipartite (each part sorted), else None."""
    parts = []
    seen = set()
    for v in G.vertices:
        if v in seen:
            continue
        part = [u for u in G.vertices if u == v or frozenset((u, v)) not in G.edges]
        for a in part:
            for b in G.vertices:
                if b != a and (b in part) == (frozenset((a, b)) in G.edges):
                    return None
        parts.append(part)
        seen.update(part)
    return parts


def threshold_split(G: Graph):
    """(clique, nested neighbourhood vertices) if ``G`` is a threshold graph, else None.

    Peels isolated and dominating vertices; the dominating ones form the
    clique and every isolated one sees exactly the clique vertices peeled
    before it.
    """
    left = set(G.vertices)
    adj = {v: set(G.neighbors(v)) for v in G.vertices}
    order = []
    while len(left) > 1:
        pick = None
        for v in sorted(left):
            d = len(adj[v] & left)
            if d == 0:
                pick = (v, "iso")
                break
            if d == len(left) - 1:
                pick = (v, "dom")
                break
        if pick is None:
            return None
        order.append(pick)
        left.discard(pick[0])
    if left:
        order.append((left.pop(), "dom"))
    clique = [v for v, t in order if t == "dom"]
    others = [v for v, t in order if t == "iso"]
    return clique, others


def _relabel(arr: Arrangement, labels) -> Arrangement:
    """Body k of ``arr`` goes to position labels[k]."""
    out = [None] * len(labels)
    for k, lab in enumerate(labels):
        out[lab - 1] = arr.bodies[k]
    return Arrangement(arr.dim, arr.topology, tuple(out))


def family_realization(G: Graph):
    """(family tag, closed segment arrangement with G's labels) or None."""
    from .realize2d import realize_complete_multipartite, realize_nested

    if G.n == 0:
        return None
    parts = multipartite_parts(G)
    if parts is not None:
        arr = realize_complete_multipartite([len(p) for p in parts])
        return "CompleteMultipartite", _relabel(arr, [v for p in parts for v in p])
    split = threshold_split(G)
    if split is not None:
        clique, others = split
        pos = {v: k + 1 for k, v in enumerate(clique)}
        hoods = [{pos[u] for u in G.neighbors(w)} for w in others]
        arr = realize_nested(len(clique), hoods)
        return "NestedNeighborhoods", _relabel(arr, clique + others)
    return None


# ----------------------------------------------------------------- reports

@dataclass
class Reason:
    bound: str            # "lower" or "upper"
    value: float
    criterion: str
    witness: object = None

    def to_json(self):
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        v = "inf" if self.value == INFINITY else int(self.value)
        return {"bound": self.bound, "value": v, "criterion": self.criterion, "witness": w}


@dataclass
class DimensionReport:
    realizable: bool
    lower: float
    upper: float
    reasons: list = field(default_factory=list)
    realization: Arrangement | None = None

    def to_json(self):
        f = lambda v: "inf" if v == INFINITY else int(v)
        return {
            "realizable": self.realizable,
            "lower": f(self.lower),
            "upper": f(self.upper),
            "reasons": [r.to_json() for r in self.reasons],
            "realization": self.realization.to_json() if self.realization else None,
        }


def _triangle(G: Graph):
    for e in G.sorted_edges():
        a, b = e
        for c in G.neighbors(a):
            if c > b and frozenset((b, c)) in G.edges:
                return (a, b, c)
    return None


def _hole(G: Graph):
    """A chordless cycle of length at least four, or None when G is chordal."""
    H = G.to_networkx()
    if nx.is_chordal(H):
        return None
    for cyc in nx.chordless_cycles(H):
        if len(cyc) >= 4:
            return list(cyc)
    return None


def _pair_json(pair):
    return [sorted(s) for s in pair]


def _realize_in_plane(C: NeuralCode, G: Graph, planar: bool):
    """Certified open realization of C in the plane through a graph realization, or None."""
    from .realize2d import graph_to_code_realization, realize_planar
    from .transforms import closed_to_open
    from .verify import compute_code

    if planar:
        A, tag = realize_planar(G), "PlanarGraph"
    else:
        fam = family_realization(G)
        if fam is None:
            return None
        tag, closed = fam
        A = closed_to_open(closed)
    B = graph_to_code_realization(A, C)
    if compute_code(B) != C:
        return None
    return tag, B


def embedding_dimension(C: NeuralCode, construct: bool = True) -> DimensionReport:
    """Lower and upper bounds on the embedding dimension of a 2-sparse code.

    With ``construct`` every upper bound of 2 or 3 comes with an explicit
    certified realization; without it the 2 and 3 bounds rest on the
    construction theorems alone.
    """
    if not is_k_sparse(C, 2):
        raise NotTwoSparse("embedding_dimension handles 2-sparse codes only")
    bad = intersection_violation(C)
    if bad is not None:
        r = Reason("upper", INFINITY, "IntersectionIncomplete", _pair_json(bad))
        return DimensionReport(False, INFINITY, INFINITY, [r])
    if C.supports == frozenset({frozenset()}):
        return DimensionReport(True, 0, 0, [Reason("upper", 0, "TrivialCode", None),
                                            Reason("lower", 0, "TrivialCode", None)])
    reasons = [Reason("lower", 1, "TrivialCode", {"nonempty_word": word_of(C.sorted_supports()[1], C.n)})]
    lower, upper = 1, 3
    realization = None
    tri = _triangle(code_graph(C))
    if tri is not None:
        # three pairwise meeting intervals share a point, which would be a weight-3 word
        reasons.append(Reason("lower", 2, "HellyR1Obstruction", {"triangle": list(tri)}))
        lower = 2
    elif (hole := _hole(code_graph(C))) is not None:
        # the code graph of intervals is an interval graph, hence chordal
        reasons.append(Reason("lower", 2, "HellyR1Obstruction", {"chordless_cycle": hole}))
        lower = 2
    elif C.n <= MAX_INTERVAL_NEURONS:
        iv = interval_search(C)
        if iv is not None:
            reasons.append(Reason("upper", 1, "IntervalRealization", iv))
            return DimensionReport(True, 1, 1, reasons, iv)
        reasons.append(Reason("lower", 2, "HellyR1Obstruction", {"interval_search": "exhausted"}))
        lower = 2
    G = code_graph(C)
    pl = is_planar(G)
    fam = None if pl else family_realization(G)
    if pl or fam is not None:
        tag = "PlanarGraph" if pl else "ConstructionFamily"
        wit = pl.to_json() if pl else {"family": fam[0]}
        if construct:
            got = _realize_in_plane(C, G, bool(pl))
            if got is not None:
                realization = got[1]
                reasons.append(Reason("upper", 2, tag, wit))
                upper = 2
        else:
            reasons.append(Reason("upper", 2, tag, wit))
            upper = 2
    if upper == 3:
        if construct:
            from .realize3d import realize_code_r3

            realization = realize_code_r3(C)
        reasons.append(Reason("upper", 3, "TheoremUpperBound3", None))
        sub = subdivision_structure(G)
        if sub is not None and C == graph_full_code(G):
            bp = is_planar(sub.base)
            if not bp:
                reasons.append(Reason("lower", 3, "SubdivisionOfNonplanar", {
                    "base": sub.base.to_json(),
                    "branch_vertices": list(sub.branch),
                    "subdivision_vertices": list(sub.subdividers),
                    "kuratowski": bp.kuratowski.to_json(),
                }))
                lower = 3
    return DimensionReport(True, lower, upper, reasons, realization)
