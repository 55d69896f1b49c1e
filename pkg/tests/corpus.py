"""Seeded corpus of 2-sparse arrangements: constructions and perturbed copies."""

import itertools
import random
from fractions import Fraction

import networkx as nx

from sparsecodes import (
    CLOSED,
    OPEN,
    Arrangement,
    Graph,
    Interval,
    NeuralCode,
    code_graph,
    realize_code_r3,
    realize_complete_multipartite,
    realize_graph_r3,
    realize_nested,
    realize_planar,
)
from sparsecodes.cli import random_code
from sparsecodes.realize2d import code_to_graph_realization, graph_to_code_realization
from sparsecodes.verify import compute_code, has_triple_intersection, margins


def _planar_graph(rng, n):
    while True:
        G = nx.gnp_random_graph(n, rng.uniform(0.3, 0.8), seed=rng.randrange(1 << 30))
        if nx.is_connected(G) and nx.check_planarity(G)[0]:
            return Graph.from_pairs(n, [(a + 1, b + 1) for a, b in G.edges])


def _random_graph(rng, n):
    return Graph.from_pairs(n, [p for p in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.4])


def _intervals(rng):
    n = rng.randint(2, 5)
    while True:
        bodies = []
        for _ in range(n):
            a = rng.randint(0, 12)
            bodies.append(Interval(Fraction(a), Fraction(a + rng.randint(1, 4))))
        arr = Arrangement(1, rng.choice((OPEN, CLOSED)), tuple(bodies))
        if has_triple_intersection(arr) is None:
            return arr


def _singleton_drops(rng, arr):
    # delete {i} only for vertices with at most one neighbour, so the code stays intersection-complete
    full = compute_code(arr)
    G = code_graph(full)
    sups = set(full.supports)
    for i in range(1, arr.n + 1):
        if G.degree(i) <= 1 and rng.random() < 0.5:
            sups.discard(frozenset((i,)))
    return NeuralCode(arr.n, frozenset(sups))


def construction(rng, kind):
    if kind == 0:
        return _intervals(rng)
    if kind == 1:
        return realize_planar(_planar_graph(rng, rng.randint(2, 5)))
    if kind == 2:
        return realize_complete_multipartite([rng.randint(1, 3) for _ in range(rng.randint(1, 3))])
    if kind == 3:
        n = rng.randint(1, 3)
        hoods, cur = [], set()
        for v in range(1, n + 1):
            cur = cur | {v}
            if rng.random() < 0.7:
                hoods.append(set(cur))
        return realize_nested(n, hoods or [{1}])
    if kind == 4:
        return realize_code_r3(random_code(rng.randint(2, 5), rng.randrange(1 << 30)))
    if kind == 5:
        return realize_graph_r3(_random_graph(rng, rng.randint(2, 5)))
    arr = realize_planar(_planar_graph(rng, rng.randint(2, 4)))
    arr = graph_to_code_realization(arr, _singleton_drops(rng, arr))
    return code_to_graph_realization(arr) if rng.random() < 0.5 else arr


KINDS = 7


def perturb(rng, arr):
    """Translate every body by less than a quarter of the smallest certified slack."""
    m = [v for v in margins(arr, free_boundary=False).values() if v]
    if not m:
        return None
    step = min(m) / (4 * arr.dim)
    den = 1 << 10
    bodies = []
    for b in arr.bodies:
        v = tuple(step * Fraction(rng.randint(-den, den), den) for _ in range(arr.dim))
        bodies.append(b if b.is_empty else b.translate(v))
    out = Arrangement(arr.dim, arr.topology, tuple(bodies))
    return out if has_triple_intersection(out) is None else None


def corpus(count=500, seed=2024):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        arr = construction(rng, len(out) % KINDS)
        out.append(arr)
        if len(out) < count and rng.random() < 0.5:
            p = perturb(rng, arr)
            if p is not None:
                out.append(p)
    return out
