"""Exact rational linear programming via a dense two-phase simplex.

Everything runs over ``fractions.Fraction``: feasibility answers come with
certificates (a primal solution, or a Farkas multiplier vector proving
infeasibility) that verify in exact arithmetic.  Problem sizes here are tiny
(a handful of variables and constraints), so a textbook tableau with Bland's
rule is the right tool; no effort is spent on sparsity or revised updates.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ._rational import frac

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: LPStatus
    x: tuple | None = None          # original-variable values (Fractions)
    objective: Fraction | None = None
    farkas: tuple | None = None     # row multipliers (eq rows then ub rows)


def _pivot(T, r, c):
    piv = T[r][c]
    inv = _ONE / piv
    row_r = [v * inv for v in T[r]]
    T[r] = row_r
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f:
            T[i] = [a - f * b for a, b in zip(row, row_r)]


def _simplex_min(T, basis, ncols):
    """Run Bland-rule simplex on tableau T (row 0 = reduced costs).

    Returns 'optimal' or 'unbounded'.  ``ncols`` = number of structural
    columns eligible for entering (excludes the rhs).
    """
    m = len(T) - 1
    while True:
        enter = -1
        row0 = T[0]
        for j in range(ncols):
            if row0[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave, best = -1, None
        for i in range(1, m + 1):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i - 1] < basis[leave - 1]):
                    best, leave = ratio, i
        if leave < 0:
            return "unbounded"
        _pivot(T, leave, enter)
        basis[leave - 1] = enter


def _solve_standard(A, b, c):
    """Minimize c.x subject to A x = b, x >= 0 (all Fractions).

    Returns (status, x, objective, farkas_y) where farkas_y certifies
    infeasibility: y.A <= 0 columnwise and y.b > 0.
    """
    m, n = len(A), len(c)
    signs = [1] * m
    A = [list(row) for row in A]
    b = list(b)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
            signs[i] = -1

    # Phase 1 tableau: columns = structural | artificial | rhs.
    width = n + m + 1
    T = [[_ZERO] * width for _ in range(m + 1)]
    for i in range(m):
        row = T[i + 1]
        for j in range(n):
            row[j] = A[i][j]
        row[n + i] = _ONE
        row[-1] = b[i]
    for j in range(width):
        s = _ZERO
        for i in range(1, m + 1):
            s += T[i][j]
        T[0][j] = -s          # reduced costs of phase-1 objective sum(artificials)
    for i in range(m):
        T[0][n + i] = _ZERO
    basis = [n + i for i in range(m)]

    _simplex_min(T, basis, n + m)
    w = -T[0][-1]
    if w > 0:
        # Farkas: y_i = 1 - reduced cost of artificial column i, unflip signs.
        y = tuple(signs[i] * (_ONE - T[0][n + i]) for i in range(m))
        return LPStatus.INFEASIBLE, None, None, y

    # Drive artificials out of the basis; drop rows that become redundant.
    drop = []
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if T[i + 1][j] != 0), None)
            if piv is None:
                drop.append(i + 1)
            else:
                _pivot(T, i + 1, piv)
                basis[i] = piv
    if drop:
        keep = [i for i in range(1, m + 1) if i not in drop]
        T = [T[0]] + [T[i] for i in keep]
        basis = [basis[i - 1] for i in keep]
        m = len(basis)

    # Phase 2: rebuild cost row for the real objective, artificials barred.
    for i in range(m):
        T[i + 1] = T[i + 1][:n] + [T[i + 1][-1]]
    row0 = list(c) + [_ZERO]
    for i in range(m):
        cb = c[basis[i]]
        if cb:
            row0 = [a - cb * v for a, v in zip(row0, T[i + 1])]
    T = [row0] + T[1:]
    status = _simplex_min(T, basis, n)
    if status == "unbounded":
        return LPStatus.UNBOUNDED, None, None, None

    x = [_ZERO] * n
    for i in range(m):
        x[basis[i]] = T[i + 1][-1]
    return LPStatus.OPTIMAL, tuple(x), -T[0][-1], None


def lp_solve(c, *, A_eq=(), b_eq=(), A_ub=(), b_ub=(), free=(), maximize=False):
    """Solve min (or max) of c.x over A_eq x = b_eq, A_ub x <= b_ub.

    Variables are nonnegative unless their index appears in ``free``.
    All data is coerced to Fraction.  On infeasibility, ``farkas`` holds
    multipliers y (eq rows first, then ub rows; ub entries <= 0) with
    sum_i y_i <row_i, x> <= 0 valid for every feasible x yet y.b > 0.
    """
    c = [frac(v) for v in c]
    n = len(c)
    free = set(free)
    A_eq = [[frac(v) for v in row] for row in A_eq]
    A_ub = [[frac(v) for v in row] for row in A_ub]
    b_eq = [frac(v) for v in b_eq]
    b_ub = [frac(v) for v in b_ub]
    if maximize:
        c = [-v for v in c]

    # Column layout: one column per nonneg var, two (+/-) per free var,
    # then one slack per ub row.
    cols = []        # (var index, sign)
    for j in range(n):
        cols.append((j, 1))
        if j in free:
            cols.append((j, -1))
    nstruct = len(cols)
    nslack = len(A_ub)

    def build_row(row):
        out = [row[j] * s for j, s in cols]
        return out

    A = []
    b = []
    for row, rhs in zip(A_eq, b_eq):
        A.append(build_row(row) + [_ZERO] * nslack)
        b.append(rhs)
    for k, (row, rhs) in enumerate(zip(A_ub, b_ub)):
        slack = [_ZERO] * nslack
        slack[k] = _ONE
        A.append(build_row(row) + slack)
        b.append(rhs)
    cost = [c[j] * s for j, s in cols] + [_ZERO] * nslack

    status, xstd, obj, farkas = _solve_standard(A, b, cost)
    if status is not LPStatus.OPTIMAL:
        return LPResult(status=status, farkas=farkas)

    x = [_ZERO] * n
    for value, (j, s) in zip(xstd, cols):
        x[j] += s * value
    if maximize and obj is not None:
        obj = -obj
    return LPResult(status=LPStatus.OPTIMAL, x=tuple(x), objective=obj)
