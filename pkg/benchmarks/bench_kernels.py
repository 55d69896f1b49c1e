"""Numba kernels against their numpy fallbacks.

Times the two hot loops, point-to-body signed distances and the packing
radius relaxation, on each backend and checks that they agree.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import networkx as nx
import numpy as np

from sparsecodes import accel, realize_complete_multipartite, realize_code_r3
from sparsecodes.cli import random_code
from sparsecodes.kernel import info
from sparsecodes.packing import flowers, triangulate


def best_of(fn, repeat):
    fn()  # warm-up, includes JIT compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def distance_case(arr, npts, seed=0):
    bodies = [b for b in arr.bodies if not b.is_empty]
    pk = accel.make_pack([info(b) for b in bodies], [float(b.rho_sq) ** 0.5 for b in bodies], arr.dim)
    lo = np.min([[float(c) for c in info(b).lo] for b in bodies], axis=0) - 1
    hi = np.max([[float(c) for c in info(b).hi] for b in bodies], axis=0) + 1
    P = lo + (hi - lo) * np.random.default_rng(seed).random((npts, arr.dim))
    return P, pk


def relax_case(n, seed=0):
    H = nx.random_labeled_tree(n, seed=seed)
    tri = triangulate(n, list(H.edges))
    fl = flowers(tri)
    fptr = np.zeros(tri.nverts + 1, dtype=np.int64)
    for v, seq in enumerate(fl):
        fptr[v + 1] = fptr[v] + len(seq)
    flower = np.array([x for seq in fl for x in seq], dtype=np.int64)
    bset = set(tri.boundary)
    aims = np.array([np.pi - 2 * np.pi / len(tri.boundary) if v in bset else 2 * np.pi for v in range(tri.nverts)])
    closed = np.array([v not in bset for v in range(tri.nverts)])
    return aims, fptr, flower, closed, tri.nverts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if accel.HAVE_NUMBA else [])

    cases = {
        "segments K(3,3,3), 2D": distance_case(realize_complete_multipartite([3, 3, 3]), 200_000),
        "polytopes n=6, 3D": distance_case(realize_code_r3(random_code(6, 4)), 200_000),
    }
    print(f"{'kernel':34s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}")
    for name, (P, pk) in cases.items():
        ts, outs = [], []
        for b in backends:
            ts.append(best_of(lambda: accel.signed_distances(P, pk, which=b, early=False), args.repeat))
            outs.append(accel.signed_distances(P, pk, which=b, early=False))
        assert all(np.allclose(outs[0], o, rtol=1e-12, atol=1e-9) for o in outs)
        sp = f"{ts[0] / ts[-1]:9.1f}x" if len(ts) > 1 else ""
        print(f"{'distances, ' + name:34s}" + "".join(f"{t * 1e3:10.1f}ms" for t in ts) + sp)

    for n in (60, 200):
        aims, fptr, flower, closed, nv = relax_case(n)
        ts, outs = [], []
        for b in backends:
            run = lambda: accel.relax_radii(np.ones(nv), aims, fptr, flower, closed, which=b)
            ts.append(best_of(run, args.repeat))
            outs.append(run()[0])
        assert all(np.allclose(outs[0], o, rtol=1e-9) for o in outs)
        sp = f"{ts[0] / ts[-1]:9.1f}x" if len(ts) > 1 else ""
        print(f"{f'relax radii, tree n={n}':34s}" + "".join(f"{t * 1e3:10.1f}ms" for t in ts) + sp)


if __name__ == "__main__":
    main()
