"""Exact integer and rational linear algebra on tiny dense matrices.

Smith normal form with transformation matrices, saturated span/kernel
lattice bases, rational Gaussian elimination and determinants.  Everything
uses Python's unbounded integers / Fractions; matrices here are at most a
few columns wide (n <= 4 in practice), so no normal-form shortcuts are
needed.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(rows)]


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(A):
    """Return (D, U, V) with U A V = D, U, V unimodular, D diagonal.

    Diagonal entries d_1 | d_2 | ... (nonnegative).  A is not modified.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def min_entry(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    t = 0
    while t < min(m, n):
        pos = min_entry(t)
        if pos is None:
            break
        _, pi, pj = pos
        _swap_rows(D, t, pi), _swap_rows(U, t, pi)
        _swap_cols(D, t, pj), _swap_cols(V, t, pj)
        dirty = False
        for i in range(t + 1, m):
            if D[i][t]:
                q = D[i][t] // D[t][t]
                for j in range(n):
                    D[i][j] -= q * D[t][j]
                for j in range(m):
                    U[i][j] -= q * U[t][j]
                if D[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if D[t][j]:
                q = D[t][j] // D[t][t]
                for i in range(m):
                    D[i][j] -= q * D[i][t]
                for i in range(n):
                    V[i][j] -= q * V[i][t]
                if D[t][j]:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility d_t | D[i][j] for the trailing block.
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if D[i][j] % D[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(n):
                D[t][j] += D[bad][j]
            for j in range(m):
                U[t][j] += U[bad][j]
            continue
        if D[t][t] < 0:
            for j in range(n):
                D[t][j] = -D[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1
    for i in range(min(m, n)):
        if D[i][i] < 0:
            for j in range(n):
                D[i][j] = -D[i][j]
            for j in range(m):
                U[i][j] = -U[i][j]
    return D, U, V


def invert_unimodular(U):
    """Exact inverse of a unimodular integer matrix (stays integral)."""
    n = len(U)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    assert all(v.denominator == 1 for row in out for v in row)
    return [[int(v) for v in row] for row in out]


def rational_rank(rows):
    """Rank of a matrix given as a list of rational row vectors."""
    M = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [v * inv for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def solve_rational(A_cols, target):
    """Solve sum_j x_j A_cols[j] = target exactly; None if inconsistent.

    Requires the columns to be linearly independent (unique solution).
    """
    n = len(target)
    k = len(A_cols)
    M = [[Fraction(A_cols[j][i]) for j in range(k)] + [Fraction(target[i])]
         for i in range(n)]
    rank = 0
    pivots = []
    for col in range(k):
        piv = next((i for i in range(rank, n) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [v * inv for v in M[rank]]
        for i in range(n):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, n):
        if M[i][k] != 0:
            return None
    if rank < k:
        raise ValueError("columns are linearly dependent")
    x = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        x[col] = M[r][k]
    return tuple(x)


def det_rational(M):
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for i in range(col + 1, n):
            if A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return det


def maximal_minor_gcd(cols):
    """gcd of all l x l minors of the integer matrix with columns ``cols``."""
    n = len(cols[0])
    ell = len(cols)
    g = 0
    for rows in combinations(range(n), ell):
        sub = [[cols[j][i] for j in range(ell)] for i in rows]
        d = det_rational(sub)
        g = gcd(g, abs(int(d)))
    return g


def size_reduce_columns(cols):
    """Greedy pairwise size reduction of an integer lattice basis.

    Only unimodular column operations (subtracting rounded multiples), so
    the generated lattice is unchanged; entries shrink to sane magnitudes.
    The Smith-normal-form transforms this cleans up after carry no size
    control at all.
    """
    cols = [list(c) for c in cols]
    changed = True
    while changed:
        changed = False
        cols.sort(key=lambda c: (sum(x * x for x in c), c))
        for i in range(len(cols)):
            nii = sum(x * x for x in cols[i])
            if nii == 0:
                continue
            for j in range(len(cols)):
                if i == j:
                    continue
                q = round(Fraction(sum(a * b for a, b in zip(cols[i], cols[j])), nii))
                if q:
                    new = [b - q * a for a, b in zip(cols[i], cols[j])]
                    if sum(x * x for x in new) < sum(x * x for x in cols[j]):
                        cols[j] = new
                        changed = True
    return [tuple(c) for c in cols]


def span_lattice_basis(int_cols):
    """Basis of (span_R of the columns) intersected with Z^n.

    ``int_cols``: list of integer column vectors.  Returns a list of integer
    columns forming a size-reduced basis of the saturated lattice.
    """
    n = len(int_cols[0])
    B = [[col[i] for col in int_cols] for i in range(n)]  # n x k
    D, U, _ = smith_normal_form(B)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i] != 0)
    Uinv = invert_unimodular(U)
    return size_reduce_columns(
        [tuple(Uinv[i][j] for i in range(n)) for j in range(r)])


def kernel_lattice_basis(int_rows):
    """Basis of {x in Z^n : row . x = 0 for every row} (saturated)."""
    n = len(int_rows[0])
    M = [list(r) for r in int_rows]
    D, _, V = smith_normal_form(M)
    r = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i] != 0)
    return size_reduce_columns(
        [tuple(V[i][j] for i in range(n)) for j in range(r, n)])


def complete_primitive(v):
    """Extend a primitive integer vector to a unimodular basis of Z^n.

    Returns an n x n unimodular integer matrix whose first column is v.
    """
    n = len(v)
    D, U, _ = smith_normal_form([[x] for x in v])
    if D[0][0] != 1:
        raise ValueError("vector is not primitive")
    Uinv = invert_unimodular(U)   # first column of Uinv is +-v
    cols = [tuple(Uinv[i][j] for i in range(n)) for j in range(n)]
    if cols[0] != tuple(v):
        assert cols[0] == tuple(-x for x in v)
        cols = [tuple(-x for x in cols[0])] + cols[1:]
    return [[cols[j][i] for j in range(n)] for i in range(n)]
