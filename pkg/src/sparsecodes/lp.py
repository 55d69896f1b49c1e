"""Small dense linear programs over the rationals.

Two-phase tableau simplex with Bland's rule.  Every quantity is a
``Fraction``, so feasibility and optimality answers are exact.  Sizes in
this package are tiny (tens of variables), so no attention is paid to
sparsity or pivoting heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None


def _pivot(T, basis, r, c):
    row = T[r]
    pv = row[c]
    if pv != 1:
        inv = 1 / pv
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, ncols):
    """Maximize the objective stored in the last row (as negated reduced costs)."""
    m = len(T) - 1
    obj = T[-1]
    while True:
        obj = T[-1]
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            return UNBOUNDED
        _pivot(T, basis, leave, enter)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[bool] | None = None,
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``.

    Variables are nonnegative unless flagged in ``free``.
    """
    n = len(c)
    free = list(free) if free is not None else [False] * n
    # column map: each free variable becomes (plus, minus)
    cols: list[tuple[int, int]] = []
    ncore = 0
    for j in range(n):
        if free[j]:
            cols.append((ncore, ncore + 1))
            ncore += 2
        else:
            cols.append((ncore, -1))
            ncore += 1

    def expand(row):
        out = [_ZERO] * ncore
        for j, v in enumerate(row):
            v = Fraction(v)
            p, q = cols[j]
            out[p] += v
            if q >= 0:
                out[q] -= v
        return out

    rows = []
    for a, b in zip(A_ub, b_ub):
        rows.append((expand(a), Fraction(b), True))
    for a, b in zip(A_eq, b_eq):
        rows.append((expand(a), Fraction(b), False))
    m = len(rows)
    nslack = sum(1 for r in rows if r[2])
    nart = m
    ncols = ncore + nslack + nart
    T = []
    basis = [0] * m
    s = 0
    for i, (a, b, is_ub) in enumerate(rows):
        row = a + [_ZERO] * (nslack + nart) + [b]
        if is_ub:
            row[ncore + s] = _ONE
            s += 1
        if b < 0:
            row = [-v for v in row]
        row[ncore + nslack + i] = _ONE
        T.append(row)
        basis[i] = ncore + nslack + i
    # phase 1: maximize -sum(artificials)
    obj = [_ZERO] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            obj[j] -= T[i][j]
        obj[ncore + nslack + i] += 1  # artificial reduced cost becomes zero
    T.append(obj)
    _run(T, basis, ncols)
    if T[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis
    art0 = ncore + nslack
    for i in range(m):
        if basis[i] >= art0:
            for j in range(art0):
                if T[i][j] != 0:
                    _pivot(T, basis, i, j)
                    break
    keep = [i for i in range(m) if basis[i] < art0]
    T = [T[i][:art0] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    ncols = art0
    # phase 2 objective row: -c, then eliminate basic columns
    cexp = expand(c) + [_ZERO] * nslack
    obj = [-v for v in cexp] + [_ZERO]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            obj = [a - f * b for a, b in zip(obj, T[i])]
    T.append(obj)
    status = _run(T, basis, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    vals = [_ZERO] * ncols
    for i, bcol in enumerate(basis):
        vals[bcol] = T[i][-1]
    x = []
    for j in range(n):
        p, q = cols[j]
        x.append(vals[p] - (vals[q] if q >= 0 else 0))
    return LPResult(OPTIMAL, T[-1][-1], tuple(x))


def feasible_point(
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nvars: int | None = None,
    free: Sequence[bool] | None = None,
) -> tuple | None:
    """Return some feasible point of the system, or None if it is empty."""
    if nvars is None:
        rows = list(A_ub) + list(A_eq)
        nvars = len(rows[0]) if rows else 0
    res = maximize([0] * nvars, A_ub, b_ub, A_eq, b_eq, free)
    return res.x if res.status == OPTIMAL else None
