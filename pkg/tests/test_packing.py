import itertools

import networkx as nx
import numpy as np
import pytest

from sparsecodes import packing


def _check(n, edges):
    tri = packing.triangulate(n, edges)
    raw = packing.solve(tri)
    assert raw.residual < 1e-12
    assert packing.angle_residual(tri, raw.radii) < 1e-10
    z, r = raw.centers, raw.radii
    es = {frozenset(e) for t in tri.triangles for e in itertools.combinations(t, 2)}
    for a, b in itertools.combinations(range(tri.nverts), 2):
        d = np.linalg.norm(z[a] - z[b])
        if frozenset((a, b)) in es:
            assert abs(d - r[a] - r[b]) < 1e-9 * max(r[a], r[b], 1e-300) / r.max() + 1e-9 * r.max()
        else:
            assert d > r[a] + r[b] - 1e-9 * r.max()
    return tri, raw


@pytest.mark.parametrize("name,graph", [
    ("K3", nx.complete_graph(3)),
    ("K4", nx.complete_graph(4)),
    ("path", nx.path_graph(5)),
    ("star", nx.star_graph(6)),
    ("cycle", nx.cycle_graph(6)),
    ("wheel", nx.wheel_graph(6)),
    ("octahedron", nx.octahedral_graph()),
])
def test_contact_graph_is_the_triangulation(name, graph):
    tri, _ = _check(graph.number_of_nodes(), list(graph.edges()))
    # original vertices gain no new adjacency among themselves
    for t in tri.triangles:
        orig = [v for v in t if v < tri.original]
        for a, b in itertools.combinations(orig, 2):
            assert graph.has_edge(a, b)


def test_nonplanar_rejected():
    with pytest.raises(packing.NotPlanar):
        packing.triangulate(5, list(nx.complete_graph(5).edges()))


def test_flowers_are_consistent():
    tri = packing.triangulate(4, list(nx.complete_graph(4).edges()))
    fl = packing.flowers(tri)
    bset = set(tri.boundary)
    for v, seq in enumerate(fl):
        if v in bset:
            assert seq[0] != seq[-1]
        else:
            assert seq[0] == seq[-1]
