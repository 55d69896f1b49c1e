import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sparsecodes import accel, kernel, packing
from sparsecodes.bodies import Disk, Offset, Polygon, Polytope3, Segment

needs_numba = pytest.mark.skipif(not accel.HAVE_NUMBA, reason="numba not installed")

BODIES_2D = [
    Polygon(((0, 0), (4, 0), (4, 3), (0, 3))),
    Segment((-1, -1), (5, 4)),
    Disk((2, 2), 2),
    Offset(Polygon(((1, 1), (2, 1), (1, 2))), 1),
]
BODIES_3D = [
    Polytope3(((0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2))),
    Offset(Polytope3(((1, 1, 1),)), 1),
    Offset(Segment((0, 0, 0), (3, 3, 3)), 1),
]


def _member(p, body):
    from fractions import Fraction

    return kernel.member(tuple(Fraction(x) for x in p), body, strict=False)


@needs_numba
@pytest.mark.parametrize("bodies,d", [(BODIES_2D, 2), (BODIES_3D, 3)])
@pytest.mark.parametrize("early", [True, False])
def test_backends_agree_on_signed_distances(bodies, d, early):
    rng = np.random.default_rng(7)
    P = rng.uniform(-3, 7, size=(2000, d))
    pack = kernel._pack(tuple(bodies))
    a = accel.signed_distances(P, pack, which="numba", early=early)
    b = accel.signed_distances(P, pack, which="numpy", early=early)
    assert np.allclose(a, b, atol=1e-12)


@pytest.mark.parametrize("bodies,d", [(BODIES_2D, 2), (BODIES_3D, 3)])
def test_excess_sign_matches_exact_membership(bodies, d):
    rng = np.random.default_rng(11)
    P = np.round(rng.uniform(-3, 7, size=(400, d)) * 64) / 64
    ex = kernel.excess(P, list(bodies), early=False)
    for r, p in enumerate(P):
        for k, body in enumerate(bodies):
            if abs(ex[r, k]) > 1e-9:
                assert (ex[r, k] < 0) == _member(p, body)


@needs_numba
@pytest.mark.parametrize("edges,n", [([(0, 1), (1, 2), (0, 2)], 3), ([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], 4)])
def test_backends_agree_on_packing(edges, n):
    tri = packing.triangulate(n, edges)
    a = packing.solve(tri, which="numba")
    b = packing.solve(tri, which="numpy")
    assert a.residual < 1e-12 and b.residual < 1e-12
    assert np.allclose(a.radii / a.radii.max(), b.radii / b.radii.max(), atol=1e-9)


@pytest.mark.parametrize("flag", ["1", "true"])
def test_env_flag_selects_numpy(flag):
    env = dict(os.environ, SPARSECODES_DISABLE_JIT=flag)
    out = subprocess.run([sys.executable, "-c", "import sparsecodes; print(sparsecodes.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        accel.signed_distances(np.zeros((1, 2)), kernel._pack((BODIES_2D[0],)), which="fortran")


@needs_numba
@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10)), min_size=1, max_size=40),
       st.sampled_from([2, 3]))
def test_backends_agree_on_any_points(pts, d):
    bodies = BODIES_2D if d == 2 else BODIES_3D
    P = np.array(pts)[:, :d].copy()
    pack = kernel._pack(tuple(bodies))
    a = accel.signed_distances(P, pack, which="numba", early=False)
    b = accel.signed_distances(P, pack, which="numpy", early=False)
    assert np.allclose(a, b, atol=1e-9)
