"""Realizing any graph, and so any realizable 2-sparse code, in three dimensions.

Generators ``c_i`` sit on the moment curve at integer parameters, where the
Voronoi cells pairwise share a 2-face.  Body i is the hull of ``c_i`` and
one point ``f_ij`` in the relative interior of the face shared with each
neighbour j.  Body i lies in cell i and meets the bisector plane of
``(i, j)`` at most in ``f_ij``, so two bodies meet exactly in ``f_ij`` when
ij is an edge and never otherwise, and no three meet.  Every instance is
still certified.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import lp
from .bodies import CLOSED, OPEN, Arrangement, Empty, Polytope3, point_body
from .code import Graph, NeuralCode, code_graph, graph_full_code, intersection_violation, is_k_sparse
from .realize2d import graph_to_code_realization
from .transforms import closed_to_open
from .verify import compute_code


class CertificationFailed(RuntimeError):
    pass


class NotRealizable(ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


def moment_points(n: int) -> list:
    if n < 1:
        raise ValueError("n must be positive")
    return [(Fraction(i), Fraction(i * i), Fraction(i ** 3)) for i in range(1, n + 1)]


def _bisectors(n: int, i: int, j: int):
    """Rows ``a . x <= b`` for "closer to c_i than to c_k", and the i/j bisector ``a . x == b``."""
    c = moment_points(n)
    sq = [sum(x * x for x in p) for p in c]
    ci = c[i - 1]
    rows = [([2 * (a - b) for a, b in zip(c[k - 1], ci)], sq[k - 1] - sq[i - 1])
            for k in range(1, n + 1) if k not in (i, j)]
    eq = ([2 * (a - b) for a, b in zip(c[j - 1], ci)], sq[j - 1] - sq[i - 1])
    return rows, eq


def _on_face(x, rows) -> bool:
    return all(sum(a * t for a, t in zip(row, x)) < b for row, b in rows)


def _face_point_float(rows, eq):
    # float LP for a deep point, rounded to integers and put back on the bisector exactly
    from scipy.optimize import linprog

    A = [[float(a) for a in row] + [0.0] for row, _ in rows]
    b = [float(rhs - sum(abs(a) for a in row)) for row, rhs in rows]
    for axis in range(3):
        for sgn in (1.0, -1.0):
            e = [0.0, 0.0, 0.0, -1.0]
            e[axis] = sgn
            A.append(e)
            b.append(0.0)
    res = linprog([0, 0, 0, 1], A_ub=A or None, b_ub=b or None,
                  A_eq=[[float(a) for a in eq[0]] + [0.0]], b_eq=[float(eq[1])],
                  bounds=[(None, None)] * 3 + [(0, None)], method="highs")
    if res.status != 0:
        return None
    x = [Fraction(round(v)) for v in res.x[:3]]
    normal, rhs = eq
    ax = max(range(3), key=lambda k: abs(normal[k]))
    x[ax] = (rhs - sum(normal[k] * x[k] for k in range(3) if k != ax)) / normal[ax]
    return tuple(x) if _on_face(x, rows) else None


def _face_point_exact(rows, eq):
    # least sup-norm point of the bisector with slack at least one against the others
    A = [list(row) + [0] for row, _ in rows]
    b = [rhs - 1 for _, rhs in rows]
    for axis in range(3):
        for sgn in (1, -1):
            e = [0, 0, 0, -1]
            e[axis] = sgn
            A.append(e)
            b.append(0)
    res = lp.maximize([0, 0, 0, -1], A, b, [list(eq[0]) + [0]], [eq[1]], free=[True, True, True, False])
    if res.status != lp.OPTIMAL:
        return None
    return tuple(res.x[:3])


@lru_cache(maxsize=None)
def face_point(n: int, i: int, j: int):
    """A point inside the face shared by Voronoi cells i and j of ``moment_points(n)``.

    Exactly on the bisector and strictly closer to ``c_i, c_j`` than to any
    other generator.  None when the two cells share no 2-face.
    """
    rows, eq = _bisectors(n, i, j)
    x = _face_point_float(rows, eq)
    return x if x is not None else _face_point_exact(rows, eq)


def realize_graph_r3(G: Graph) -> Arrangement:
    """Closed polytopes in R^3 whose code is the full code of ``G``."""
    if G.n == 0:
        return Arrangement(3, CLOSED, ())
    c = moment_points(G.n)
    bodies = []
    for v in G.vertices:
        pts = [c[v - 1]]
        for u in G.neighbors(v):
            f = face_point(G.n, min(u, v), max(u, v))
            if f is None:
                raise CertificationFailed(f"Voronoi cells {min(u, v)} and {max(u, v)} share no 2-face")
            pts.append(f)
        bodies.append(point_body(pts[0]) if len(pts) == 1 else Polytope3(tuple(pts)))
    arr = Arrangement(3, CLOSED, tuple(bodies))
    if compute_code(arr) != graph_full_code(G):
        raise CertificationFailed("construction does not realize the graph")
    return arr


@lru_cache(maxsize=256)
def _open_for_graph(G: Graph) -> Arrangement:
    return closed_to_open(realize_graph_r3(G))


def realize_code_r3(C: NeuralCode) -> Arrangement:
    """Open realization of a 2-sparse intersection-complete code in R^3."""
    if not is_k_sparse(C, 2):
        raise NotRealizable("code is not 2-sparse")
    bad = intersection_violation(C)
    if bad is not None:
        raise NotRealizable("supports are not closed under intersection", bad)
    live = set().union(*C.supports) if C.supports else set()
    if not live:
        return Arrangement(3, OPEN, tuple(Empty(3) for _ in range(C.n)))
    arr = graph_to_code_realization(_open_for_graph(code_graph(C)), C)
    if compute_code(arr) != C:
        raise CertificationFailed("reduction did not reproduce the code")
    return arr
