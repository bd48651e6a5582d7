# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: lattice-point scans and monomial score sweeps.

Mirrors the API of ``_kernels_py`` exactly; ``_accel`` picks whichever
imports.  All arithmetic is int64 — callers are responsible for checking
that products cannot overflow (they do, see ``polytope._int64_safe``).
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

IMPL = "compiled"


def lattice_points_in_box(cnp.int64_t[:, :] ineq, cnp.int64_t[:] rhs,
                          cnp.int64_t[:, :] eq,
                          cnp.int64_t[:] lo, cnp.int64_t[:] hi):
    """All integer points x with lo <= x <= hi, ineq.x <= rhs, eq.x == 0.

    Returned in lexicographic order as an (count, n) int64 array.
    """
    cdef Py_ssize_t n = lo.shape[0]
    cdef Py_ssize_t k = ineq.shape[0]
    cdef Py_ssize_t e = eq.shape[0]
    cdef Py_ssize_t i, j, r
    cdef cnp.int64_t acc
    cdef bint ok

    cdef cnp.int64_t[:] x = np.array(lo, dtype=np.int64)
    for j in range(n):
        if hi[j] < lo[j]:
            return np.empty((0, n), dtype=np.int64)

    cdef Py_ssize_t cap = 1024
    cdef Py_ssize_t count = 0
    out = np.empty((cap, n), dtype=np.int64)
    cdef cnp.int64_t[:, :] ov = out
    cdef bint done = False
    while not done:
        ok = True
        for r in range(k):
            acc = 0
            for j in range(n):
                acc += ineq[r, j] * x[j]
            if acc > rhs[r]:
                ok = False
                break
        if ok:
            for r in range(e):
                acc = 0
                for j in range(n):
                    acc += eq[r, j] * x[j]
                if acc != 0:
                    ok = False
                    break
        if ok:
            if count == cap:
                cap *= 2
                grown = np.empty((cap, n), dtype=np.int64)
                grown[:count] = out[:count]
                out = grown
                ov = out
            for j in range(n):
                ov[count, j] = x[j]
            count += 1
        # odometer increment, last coordinate fastest (keeps lex order)
        i = n - 1
        while True:
            x[i] += 1
            if x[i] <= hi[i]:
                break
            x[i] = lo[i]
            i -= 1
            if i < 0:
                done = True
                break
    return out[:count].copy()


def monomial_scores(cnp.int64_t[:, :] exps, double[:] x, double[:, :] a_pts):
    """Per-exponent scores <alpha, x> - max_j <a_j, alpha> (float64)."""
    cdef Py_ssize_t K = exps.shape[0]
    cdef Py_ssize_t n = exps.shape[1]
    cdef Py_ssize_t J = a_pts.shape[0]
    cdef Py_ssize_t i, j, t
    cdef double dot, best, v
    scores = np.empty(K, dtype=np.float64)
    cdef double[:] sv = scores
    for i in range(K):
        dot = 0.0
        for t in range(n):
            dot += exps[i, t] * x[t]
        best = -1e300
        for j in range(J):
            v = 0.0
            for t in range(n):
                v += a_pts[j, t] * exps[i, t]
            if v > best:
                best = v
        if J == 0:
            best = 0.0
        sv[i] = dot - best
    return scores
