"""Pure-Python (numpy) fallback for the compiled kernels.

Same API and same results as ``_kernels``; chunked so a large scan never
materializes more than ~2**20 candidate rows at once.
"""
from __future__ import annotations

import numpy as np

IMPL = "python"

_CHUNK = 1 << 20


def lattice_points_in_box(ineq, rhs, eq, lo, hi):
    """All integer points x with lo <= x <= hi, ineq.x <= rhs, eq.x == 0."""
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    n = lo.shape[0]
    widths = hi - lo + 1
    if np.any(widths <= 0):
        return np.empty((0, n), dtype=np.int64)
    total = int(np.prod(widths, dtype=np.int64))
    ineq = np.asarray(ineq, dtype=np.int64).reshape(-1, n)
    rhs = np.asarray(rhs, dtype=np.int64)
    eq = np.asarray(eq, dtype=np.int64).reshape(-1, n)

    # Mixed-radix decode of linear indices, last coordinate fastest: the
    # output comes out lexicographically sorted just like the C loop.
    radix = np.ones(n, dtype=np.int64)
    for j in range(n - 2, -1, -1):
        radix[j] = radix[j + 1] * widths[j + 1]

    chunks = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        pts = (idx[:, None] // radix[None, :]) % widths[None, :] + lo[None, :]
        mask = np.ones(len(idx), dtype=bool)
        if ineq.shape[0]:
            mask &= np.all(pts @ ineq.T <= rhs[None, :], axis=1)
        if eq.shape[0]:
            mask &= np.all(pts @ eq.T == 0, axis=1)
        if mask.any():
            chunks.append(pts[mask])
    if not chunks:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


def monomial_scores(exps, x, a_pts):
    """Per-exponent scores <alpha, x> - max_j <a_j, alpha> (float64)."""
    exps = np.asarray(exps, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    a_pts = np.asarray(a_pts, dtype=np.float64)
    lin = exps @ x
    if a_pts.shape[0] == 0:
        return lin
    phi = (exps @ a_pts.T).max(axis=1)
    return lin - phi
