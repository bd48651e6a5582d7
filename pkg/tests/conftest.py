"""Shared instance generators and independent brute-force oracles.

Oracles here deliberately avoid the library's production code paths:
memberships go through convex-combination LPs or vertex enumeration rather
than facet tests, extremal values through candidate enumeration plus grids
rather than the simplex, so agreement is meaningful.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from cone_hull._intlinalg import solve_rational
from cone_hull._rational import fdot, fvec
from cone_hull.polytope import RationalPolytope


def rational_rng(seed: int) -> random.Random:
    return random.Random(seed)


def rand_frac(rng, lo=0, hi=2, dens=(1, 2, 3, 4, 5, 6, 8)) -> Fraction:
    den = rng.choice(dens)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_polytope(rng, n: int, k: int = 4, full_dim: bool = True,
                    hi: int = 2, dens=(1, 2, 3, 4, 5, 6, 8)) -> RationalPolytope:
    """Random rational polytope in [0, hi]^n containing 0."""
    while True:
        pts = [tuple(Fraction(0) for _ in range(n))]
        for _ in range(k):
            pts.append(tuple(rand_frac(rng, 0, hi, dens) for _ in range(n)))
        S = RationalPolytope(n, pts)
        if not full_dim or S.span_rank == n:
            return S


def random_lowdim_polytope(rng, n: int, ell: int, k: int = 3) -> RationalPolytope:
    """Random polytope of span dimension exactly ell < n inside R^n_+."""
    while True:
        basis = []
        for _ in range(ell):
            basis.append(tuple(rng.randint(0, 3) for _ in range(n)))
        pts = [tuple(Fraction(0) for _ in range(n))]
        for _ in range(k):
            coeffs = [Fraction(rng.randint(0, 4), rng.choice((1, 2, 3))) for _ in range(ell)]
            p = tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n))
            pts.append(p)
        try:
            S = RationalPolytope(n, pts)
        except Exception:
            continue
        if S.span_rank == ell:
            return S


def random_log_vertices(rng, n: int, k: int = 3, spread: int = 1):
    """Rational log-coordinate vertex cloud (coordinates in [-spread, spread])."""
    out = []
    for _ in range(k):
        out.append(tuple(Fraction(rng.randint(-spread * 4, spread * 4), 4)
                         for _ in range(n)))
    return out


# ---------------------------------------------------------------------------
# oracles


def oracle_membership(S: RationalPolytope, x) -> bool:
    """Membership via float LP (scipy), independent of the exact simplex."""
    from scipy.optimize import linprog

    verts = [[float(c) for c in v] for v in S.vertices]
    k = len(verts)
    n = S.dim
    A_eq = [[verts[i][j] for i in range(k)] for j in range(n)]
    A_eq.append([1.0] * k)
    b_eq = [float(c) for c in x] + [1.0]
    res = linprog([0.0] * k, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * k,
                  method="highs")
    return res.success


def oracle_lattice_points(S: RationalPolytope, m: int):
    """Box scan with membership decided by the exact convex-combination LP
    (no facet data involved)."""
    from cone_hull.polytope import contains, support

    n = S.dim
    hi = [int(support(S, tuple(Fraction(int(t == j)) for t in range(n))) * m)
          for j in range(n)]

    def rec(prefix):
        if len(prefix) == n:
            x = tuple(Fraction(c, m) for c in prefix)
            if contains(S, x)[0]:
                yield tuple(prefix)
            return
        for v in range(hi[len(prefix)] + 1):
            yield from rec(prefix + [v])

    return sorted(rec([]))


def oracle_vsk(S: RationalPolytope, A, x) -> Fraction:
    """Exact brute force for sup_{s in S} <s,x> - phi_A(s).

    The objective is piecewise linear over the normal-fan subdivision of S,
    so the sup is attained at a subdivision vertex: enumerate all points
    where n independent hyperplanes (facets of S or argmax ties of A) are
    active, keep the ones inside S, and maximize.  A barycentric grid is
    thrown in as well; both parts avoid the simplex entirely.
    """
    A = [fvec(a) for a in A]
    x = fvec(x)
    n = S.dim

    def phi_A(s):
        return max(fdot(a, s) for a in A)

    def value(s):
        return fdot(s, x) - phi_A(s)

    hyperplanes = []  # (normal, rhs)
    for nvec, c in S.halfspaces:
        hyperplanes.append((fvec(nvec), Fraction(c)))
    for eq in S.span_equalities:
        hyperplanes.append((fvec(eq), Fraction(0)))
    for i, j in combinations(range(len(A)), 2):
        diff = tuple(A[i][t] - A[j][t] for t in range(n))
        if any(diff):
            hyperplanes.append((diff, Fraction(0)))

    candidates = list(S.vertices)
    for subset in combinations(range(len(hyperplanes)), n):
        cols = [tuple(hyperplanes[i][0][j] for i in subset) for j in range(n)]
        rhs = [hyperplanes[i][1] for i in subset]
        try:
            s = solve_rational(cols, rhs)
        except ValueError:
            continue
        if s is not None and S.member(s):
            candidates.append(tuple(s))

    steps = 12
    for weights in _barycentric_grid(len(S.vertices), steps):
        s = tuple(sum(Fraction(w, steps) * S.vertices[i][j]
                      for i, w in enumerate(weights)) for j in range(n))
        candidates.append(s)
    return max(value(s) for s in candidates)


def _barycentric_grid(k, steps):
    if k == 1:
        yield (steps,)
        return
    for head in range(steps + 1):
        for rest in _barycentric_grid(k - 1, steps - head):
            yield (head,) + rest


@pytest.fixture
def rng():
    return rational_rng(20240817)
