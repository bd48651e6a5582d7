"""Exact convex-polytope arithmetic for rational exponent sets.

The central object is a compact convex polytope S in the nonnegative orthant
with rational vertices and 0 in S.  Everything downstream of it (cones,
lattice enumeration, extremal-function evaluation) consumes either the
vertex list or the derived exact half-space form computed here.

Vertex representation is canonical; half-space data (facet inequalities plus
span equalities, both with integer coefficients) is derived once and cached.
Floating point only ever appears in *reported* distances; all memberships,
separations and facet tests are exact.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial, sqrt

import numpy as np

from . import _accel
from ._exactlp import LPStatus, lp_solve
from ._intlinalg import kernel_lattice_basis, rational_rank, solve_rational, span_lattice_basis
from ._rational import Vec, clear_denominators, fdot, format_frac, frac, fvec, primitive
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    EmptyInterior,
    PreconditionViolated,
)

DEFAULT_BUDGET = 10**7

_F0 = Fraction(0)
_F1 = Fraction(1)


def _budget() -> int:
    value = os.environ.get("CONE_HULL_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


def _hull_2d(points):
    """Exact convex hull of 2-D rational points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class RationalPolytope:
    """Convex hull of finitely many rational points in R^n_+ containing 0.

    The stored vertex list is irredundant and sorted; instances are immutable
    and safe to share across threads.
    """

    def __init__(self, dim: int, points, _assume_minimal: bool = False):
        if dim < 1:
            raise DimensionMismatch("dimension must be a positive integer")
        pts = []
        for p in points:
            v = fvec(p)
            if len(v) != dim:
                raise DimensionMismatch(f"point {p} does not have dimension {dim}")
            if any(c < 0 for c in v):
                raise PreconditionViolated(f"vertex {p} leaves the nonnegative orthant")
            pts.append(v)
        if not pts:
            raise PreconditionViolated("a polytope needs at least one point")
        pts = sorted(set(pts))
        if not _assume_minimal:
            pts = _extreme_points(pts)
        self.dim = dim
        self.vertices: tuple[Vec, ...] = tuple(pts)
        if not self._contains_origin():
            raise PreconditionViolated("0 is not a member of the polytope")

    def _contains_origin(self) -> bool:
        zero = (_F0,) * self.dim
        if zero in self.vertices:
            return True
        return contains(self, zero)[0]

    def __eq__(self, other):
        return (isinstance(other, RationalPolytope)
                and self.dim == other.dim and self.vertices == other.vertices)

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(format_frac(c) for c in v) + ")"
                          for v in self.vertices)
        return f"RationalPolytope(dim={self.dim}, vertices=[{verts}])"

    @cached_property
    def span_rank(self) -> int:
        rows = [v for v in self.vertices if any(v)]
        return rational_rank(rows) if rows else 0

    @cached_property
    def span_basis(self) -> tuple[tuple[int, ...], ...]:
        """Integer basis of (span_R S) intersected with Z^n (saturated)."""
        cols = [clear_denominators(v) for v in self.vertices if any(v)]
        if not cols:
            return ()
        return tuple(span_lattice_basis(cols))

    @cached_property
    def span_equalities(self) -> tuple[tuple[int, ...], ...]:
        """Integer normals a with <a, x> = 0 on S (basis of span-orthogonal)."""
        rows = [clear_denominators(v) for v in self.vertices if any(v)]
        if not rows:
            return tuple(tuple(int(i == j) for j in range(self.dim)) for i in range(self.dim))
        return tuple(kernel_lattice_basis(rows))

    @cached_property
    def halfspaces(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Facet inequalities (N, c) with S = {x : N.x <= c} within the span.

        Together with ``span_equalities`` this is an exact membership test.
        """
        ell = self.span_rank
        if ell == 0:
            return ()
        basis = self.span_basis
        coords = [solve_rational(basis, v) for v in self.vertices]
        facets = set()
        for subset in combinations(range(len(coords)), ell):
            base = coords[subset[0]]
            rows = [tuple(coords[i][j] - base[j] for j in range(ell)) for i in subset[1:]]
            kern = _rational_kernel(rows, ell)
            if len(kern) != 1:
                continue
            eta = kern[0]
            c = sum(eta[j] * base[j] for j in range(ell))
            lo = hi = False
            for w in coords:
                val = sum(eta[j] * w[j] for j in range(ell))
                if val > c:
                    hi = True
                elif val < c:
                    lo = True
            if lo and hi:
                continue
            if hi:
                eta, c = tuple(-e for e in eta), -c
            lifted = _lift_normal(basis, eta, self.dim)
            facets.add(_scale_inequality(lifted, c))
        return tuple(sorted(facets))

    def member(self, x) -> bool:
        """Exact membership via the cached half-space form."""
        x = fvec(x)
        if len(x) != self.dim:
            raise DimensionMismatch("point dimension mismatch")
        for a in self.span_equalities:
            if fdot(a, x) != 0:
                return False
        for nvec, c in self.halfspaces:
            if fdot(nvec, x) > c:
                return False
        return True

    def bounding_box(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(
            (min(v[j] for v in self.vertices), max(v[j] for v in self.vertices))
            for j in range(self.dim))


def _rational_kernel(rows, ncols):
    """Basis of the kernel of a small rational matrix, as primitive ints."""
    M = [[Fraction(v) for v in row] for row in rows]
    pivots = {}
    rank = 0
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
        pivots[col] = rank
        rank += 1
    basis = []
    for col in range(ncols):
        if col in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[col] = Fraction(1)
        for pcol, prow in pivots.items():
            vec[pcol] = -M[prow][col]
        basis.append(primitive(vec))
    return basis


def _lift_normal(basis, eta, dim):
    """Lift a span-coordinate normal eta to an ambient normal N with
    <N, B u> = <eta, u>: N = B (B^T B)^{-1} eta."""
    ell = len(basis)
    gram = [[sum(Fraction(basis[i][t]) * basis[j][t] for t in range(dim))
             for j in range(ell)] for i in range(ell)]
    g_cols = [tuple(gram[i][j] for i in range(ell)) for j in range(ell)]
    w = solve_rational(g_cols, [Fraction(e) for e in eta])
    return tuple(sum(Fraction(basis[j][t]) * w[j] for j in range(ell)) for t in range(dim))


def _scale_inequality(nvec, c):
    """Clear denominators of (N, c) jointly and reduce to primitive ints."""
    from math import gcd

    ints = clear_denominators(tuple(nvec) + (Fraction(c),))
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    g = g or 1
    ints = tuple(v // g for v in ints)
    return ints[:-1], ints[-1]


def _extreme_points(pts):
    """Irredundant subset of a rational point list (exact)."""
    if not pts:
        return pts
    dim = len(pts[0])
    if dim == 2 and len(pts) > 8:
        return sorted(_hull_2d(pts))
    if len(pts) > 60:
        pts = _float_hull_reduce(pts)
    keep = list(pts)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        if others and _in_hull(keep[i], others):
            keep.pop(i)
        else:
            i += 1
    return keep


def _float_hull_reduce(pts):
    """Shrink a large candidate list with a float hull, then verify exactly.

    Every dropped point is re-checked to be inside the hull of the kept set,
    so the reduction cannot change the polytope.
    """
    try:
        from scipy.spatial import ConvexHull

        arr = np.array([[float(c) for c in p] for p in pts])
        hull = ConvexHull(arr, qhull_options="QJ")
        cand = sorted({pts[i] for i in hull.vertices})
    except Exception:
        return pts
    dropped = [p for p in pts if p not in set(cand)]
    for p in dropped:
        if not _in_hull(p, cand):
            return pts  # float hull was wrong; fall back to the full list
    return cand


def _in_hull(x, points) -> bool:
    n = len(x)
    A_eq = [[p[j] for p in points] for j in range(n)]
    A_eq.append([_F1] * len(points))
    b_eq = list(x) + [_F1]
    res = lp_solve([_F0] * len(points), A_eq=A_eq, b_eq=b_eq)
    return res.status is LPStatus.OPTIMAL


@dataclass(frozen=True)
class ExponentSet:
    """The lattice points of a dilated polytope: exactly (mS) ∩ N^n."""

    m: int
    dim: int
    points: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.points)

    def as_array(self) -> np.ndarray:
        if not self.points:
            return np.empty((0, self.dim), dtype=np.int64)
        return np.array(self.points, dtype=np.int64)


@dataclass(frozen=True)
class ConeRep:
    """A cone Γ = R_+S together with dual data.

    ``generators``       primitive integer rays spanning Γ;
    ``dual_halfspaces``  integer normals h with Γ = {x : <h,x> >= 0 for all h};
    ``dual_generators``  rays generating Γ° (extreme rays plus, for
                         lower-dimensional Γ, a ± pair per lineality
                         direction); None when ray extraction was refused.
    """

    dim: int
    generators: tuple[tuple[int, ...], ...]
    dual_halfspaces: tuple[tuple[int, ...], ...]
    dual_generators: tuple[tuple[int, ...], ...] | None

    def __post_init__(self):
        for g in self.generators:
            for h in self.dual_halfspaces:
                if sum(a * b for a, b in zip(h, g)) < 0:
                    raise PreconditionViolated(f"generator {g} violates half-space {h}")
        if self.dual_generators is not None:
            for d in self.dual_generators:
                for g in self.generators:
                    if sum(a * b for a, b in zip(d, g)) < 0:
                        raise PreconditionViolated(f"dual ray {d} has <d,{g}> < 0")


# ---------------------------------------------------------------------------
# operations


def support(S: RationalPolytope, xi) -> Fraction:
    """Supporting function: max of <v, xi> over the vertices (exact)."""
    xi = fvec(xi)
    if len(xi) != S.dim:
        raise DimensionMismatch(f"xi has dimension {len(xi)}, expected {S.dim}")
    return max(fdot(v, xi) for v in S.vertices)


def contains(S: RationalPolytope, x):
    """Exact membership with certificate.

    Returns (True, weights) with weights a convex combination over
    ``S.vertices`` reproducing x, or (False, separator) with a rational
    functional xi satisfying <xi, x> > support(S, xi).
    """
    x = fvec(x)
    if len(x) != S.dim:
        raise DimensionMismatch("point dimension mismatch")
    k = len(S.vertices)
    A_eq = [[S.vertices[i][j] for i in range(k)] for j in range(S.dim)]
    A_eq.append([_F1] * k)
    b_eq = list(x) + [_F1]
    res = lp_solve([_F0] * k, A_eq=A_eq, b_eq=b_eq)
    if res.status is LPStatus.OPTIMAL:
        return True, res.x
    xi = res.farkas[:S.dim]
    # Farkas gives <xi, v_i> + c <= 0 for all vertices and <xi, x> + c > 0,
    # hence <xi, x> > -c >= support(S, xi).
    return False, tuple(xi)


def enumerate_exponents(S: RationalPolytope, m: int, budget: int | None = None) -> ExponentSet:
    """Complete sorted list of lattice points of mS."""
    if m < 1:
        raise PreconditionViolated("m must be >= 1")
    pts = _lattice_points_dilated(S, m, budget)
    return ExponentSet(m=m, dim=S.dim, points=pts)


def _lattice_points_dilated(S: RationalPolytope, m: int, budget: int | None = None):
    """Lattice points of mS as a lex-sorted tuple of int tuples (exact)."""
    n = S.dim
    hi = []
    for j in range(n):
        top = support(S, tuple(_F1 if t == j else _F0 for t in range(n))) * m
        hi.append(int(top))  # floor: top >= 0
    count = 1
    for h in hi:
        count *= h + 1
    limit = budget if budget is not None else _budget()
    if count > limit:
        raise BudgetExceeded(
            f"bounding box holds {count} candidates > budget {limit}")

    ineq = []
    rhs = []
    for nvec, c in S.halfspaces:
        ineq.append(nvec)
        rhs.append(c * m)
    eqs = list(S.span_equalities)

    if _int64_safe(ineq + eqs, hi):
        arr = _accel.lattice_points_in_box(
            np.array(ineq, dtype=np.int64).reshape(-1, n),
            np.array(rhs, dtype=np.int64),
            np.array(eqs, dtype=np.int64).reshape(-1, n),
            np.zeros(n, dtype=np.int64),
            np.array(hi, dtype=np.int64))
        return tuple(map(tuple, arr.tolist()))

    # big-integer fallback (never hit at desk scale; kept for exactness)
    out = []
    def rec(prefix):
        if len(prefix) == n:
            for a, c in zip(ineq, rhs):
                if sum(x * y for x, y in zip(a, prefix)) > c:
                    return
            for a in eqs:
                if sum(x * y for x, y in zip(a, prefix)) != 0:
                    return
            out.append(tuple(prefix))
            return
        for v in range(hi[len(prefix)] + 1):
            rec(prefix + [v])
    rec([])
    return tuple(sorted(out))


def _int64_safe(rows, hi) -> bool:
    bound = 0
    for row in rows:
        s = sum(abs(a) * h for a, h in zip(row, hi))
        bound = max(bound, s)
    return bound < 2**62


def refine(S: RationalPolytope, m: int) -> RationalPolytope:
    """Convex hull of the points of S with coordinates in (1/m)Z."""
    if m < 1:
        raise PreconditionViolated("m must be >= 1")
    pts = _lattice_points_dilated(S, m)
    scaled = [tuple(Fraction(a, m) for a in p) for p in pts]
    if S.dim == 2:
        scaled = _hull_2d(scaled)
        return RationalPolytope(S.dim, scaled, _assume_minimal=True)
    return RationalPolytope(S.dim, scaled)


def dilate(S: RationalPolytope, m: int) -> RationalPolytope:
    """The scaled polytope mS (vertices multiplied by m)."""
    return RationalPolytope(S.dim, [tuple(c * m for c in v) for v in S.vertices],
                            _assume_minimal=True)


def section(S: RationalPolytope, J) -> RationalPolytope:
    """The coordinate section π_J(S ∩ R^J) in R^{|J|}.

    Because every coordinate is nonnegative on S and 0 ∈ S, the intersection
    S ∩ {x_j = 0, j ∉ J} is a face of S; its vertices are exactly the
    vertices of S vanishing off J.
    """
    J = list(J)
    if not J or any(j < 0 or j >= S.dim for j in J):
        raise DimensionMismatch(f"J must be a nonempty subset of 0..{S.dim - 1}")
    off = [j for j in range(S.dim) if j not in J]
    pts = [tuple(v[j] for j in J) for v in S.vertices
           if all(v[j] == 0 for j in off)]
    return RationalPolytope(len(J), pts)


def minimal_scaling(S: RationalPolytope, alpha):
    """Least rational m >= 0 with alpha ∈ mS, or None if alpha ∉ R_+S.

    This is the exact LP  min Σμ  over  Σ μ_i v_i = alpha, μ >= 0.
    """
    alpha = fvec(alpha)
    k = len(S.vertices)
    A_eq = [[S.vertices[i][j] for i in range(k)] for j in range(S.dim)]
    res = lp_solve([_F1] * k, A_eq=A_eq, b_eq=list(alpha))
    if res.status is not LPStatus.OPTIMAL:
        return None
    return res.objective


def cone_contains(S: RationalPolytope, x) -> bool:
    """Exact test x ∈ Γ = R_+S via the cone's facet description."""
    x = fvec(x)
    for a in S.span_equalities:
        if fdot(a, x) != 0:
            return False
    for h in cone_halfspaces(S):
        if fdot(h, x) < 0:
            return False
    return True


_CONE_HS_CACHE: dict = {}


def cone_halfspaces(S: RationalPolytope) -> tuple[tuple[int, ...], ...]:
    """Facet normals h of Γ = R_+S within its span: Γ = span ∩ {<h,x> >= 0}.

    Together with ``S.span_equalities`` this describes Γ exactly.
    """
    key = (S.dim, S.vertices)
    if key in _CONE_HS_CACHE:
        return _CONE_HS_CACHE[key]
    gens = _cone_generators(S)
    ell = S.span_rank
    out = set()
    if ell > 0:
        basis = S.span_basis
        coords = [solve_rational(basis, g) for g in gens]
        for subset in combinations(range(len(coords)), ell - 1):
            rows = [coords[i] for i in subset]
            kern = _rational_kernel(rows, ell)
            if len(kern) != 1:
                continue
            eta = kern[0]
            lo = hi = False
            for w in coords:
                val = sum(eta[j] * w[j] for j in range(ell))
                if val > 0:
                    hi = True
                elif val < 0:
                    lo = True
            if lo and hi:
                continue
            if lo:
                eta = tuple(-e for e in eta)
            lifted = _lift_normal(basis, eta, S.dim)
            out.add(primitive(lifted))
    result = tuple(sorted(out))
    _CONE_HS_CACHE[key] = result
    return result


def _cone_generators(S: RationalPolytope):
    gens = sorted({primitive(v) for v in S.vertices if any(v)})
    return gens


def dual_cone(S: RationalPolytope) -> ConeRep:
    """The dual cone Γ° = {x : <x, s> >= 0 for all s ∈ S} of Γ = R_+S.

    Half-space data is exact for every dimension; extreme-ray extraction
    (double description) is refused for n > 3.
    """
    n = S.dim
    gens = tuple(_cone_generators(S))
    halfspaces = list(cone_halfspaces(S))
    for a in S.span_equalities:
        halfspaces.append(tuple(a))
        halfspaces.append(tuple(-v for v in a))
    dual_gens = _dual_extreme_rays(S) if n <= 3 else None
    return ConeRep(dim=n, generators=gens,
                   dual_halfspaces=tuple(sorted(set(halfspaces))),
                   dual_generators=dual_gens)


def _dual_extreme_rays(S: RationalPolytope):
    """Rays generating Γ° = {x : <g, x> >= 0 ∀ g}: double description.

    When Γ is lower-dimensional, Γ° has a lineality space; a ± pair per
    lineality basis vector is appended so the returned rays generate Γ°.
    """
    n = S.dim
    gens = _cone_generators(S)
    if not gens:  # S = {0}: dual is all of R^n
        rays = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            rays.append(e)
            rays.append(tuple(-v for v in e))
        return tuple(rays)
    lineality = kernel_lattice_basis(gens)
    rays = set()
    # Extreme rays of the pointed part lie in span Γ and satisfy n-1
    # independent active constraints; enumerate kernel candidates of all
    # (n-1)-subsets of {generator normals} ∪ {lineality normals}.
    normals = [tuple(g) for g in gens] + [tuple(b) for b in lineality]
    for subset in combinations(range(len(normals)), n - 1):
        rows = [normals[i] for i in subset]
        kern = _rational_kernel(rows, n)
        if len(kern) != 1:
            continue
        r = kern[0]
        for cand in (r, tuple(-v for v in r)):
            if all(sum(a * b for a, b in zip(g, cand)) >= 0 for g in gens) and \
               all(sum(a * b for a, b in zip(l, cand)) == 0 for l in lineality):
                rays.add(cand)
    for b in lineality:
        rays.add(tuple(b))
        rays.add(tuple(-v for v in b))
    if n == 1 and not lineality:
        # 0-subsets give no candidates; Γ = R_+ ⇒ Γ° = R_+.
        rays.add((1,))
    return tuple(sorted(rays))


# ---------------------------------------------------------------------------
# lattice distances


def lattice_distance(P: RationalPolytope, norm: str = "euclidean"):
    """Distance from an integral polytope to the nearest outside lattice point.

    Returns (distance, bound, bound_check) where bound is the guaranteed
    lower estimate 1/(sqrt(n) (n-1)! M^(n-1)) for the Euclidean norm and the
    comparison is exact.  The polytope must have integer vertices and
    nonempty interior.
    """
    _require_integral(P)
    if P.span_rank < P.dim:
        raise EmptyInterior("the lattice-distance bound needs nonempty interior")
    n = P.dim
    M = max(max(int(c) for c in v) for v in P.vertices)
    M = max(M, 1)
    d2 = _nearest_outside_d2(P)
    bound_sq = Fraction(1, n * factorial(n - 1) ** 2 * M ** (2 * (n - 1)))
    if norm == "euclidean":
        return sqrt(d2), sqrt(bound_sq), d2 >= bound_sq
    if norm == "l1":
        d1 = _nearest_outside_l1(P)
        return float(d1), sqrt(bound_sq), d1 >= bound_sq.__float__() ** 0.5
    raise ValueError(f"unknown norm {norm!r}")


def _require_integral(P: RationalPolytope):
    for v in P.vertices:
        for c in v:
            if c.denominator != 1 or c < 0:
                raise PreconditionViolated(f"vertex {v} is not a lattice point of N^n")


def _outside_lattice_points(P: RationalPolytope):
    n = P.dim
    M = max(max(int(c) for c in v) for v in P.vertices)
    ineq = [list(nv) for nv, _ in P.halfspaces]
    rhs = [c for _, c in P.halfspaces]
    eqs = [list(a) for a in P.span_equalities]
    lo = np.full(n, -1, dtype=np.int64)
    hi = np.full(n, M + 1, dtype=np.int64)
    widths = hi - lo + 1
    total = int(np.prod(widths))
    if total > _budget():
        raise BudgetExceeded(f"distance scan of {total} points exceeds budget")
    radix = np.ones(n, dtype=np.int64)
    for j in range(n - 2, -1, -1):
        radix[j] = radix[j + 1] * widths[j + 1]
    idx = np.arange(total, dtype=np.int64)
    pts = (idx[:, None] // radix[None, :]) % widths[None, :] + lo[None, :]
    inside = np.ones(total, dtype=bool)
    if ineq:
        A = np.array(ineq, dtype=np.int64)
        b = np.array(rhs, dtype=np.int64)
        inside &= np.all(pts @ A.T <= b[None, :], axis=1)
    if eqs:
        E = np.array(eqs, dtype=np.int64)
        inside &= np.all(pts @ E.T == 0, axis=1)
    return pts[~inside]


def _nearest_outside_d2(P: RationalPolytope) -> Fraction:
    """Exact squared Euclidean distance from P to Z^n \\ P.

    A vectorized float sweep gives per-point lower/upper distance bounds;
    only points whose lower bound can still beat the best upper bound get
    the exact rational treatment, so the returned minimum is exact.
    """
    best, _, _ = nearest_outside(P)
    return best


def nearest_outside(P: RationalPolytope):
    """(d², lattice point, projection) for the nearest outside lattice point.

    d² is an exact rational; the projection q ∈ P satisfies the variational
    inequality <p - q, v - q> <= 0 for every vertex v, which certifies that
    q is the metric projection of p and d² = |p - q|² is the true distance.
    """
    outside = _outside_lattice_points(P)
    if len(outside) == 0:
        raise PreconditionViolated("no outside lattice point in scan box")
    lo, _ = _float_dist_bounds(P, outside.astype(np.float64))
    # lo is a true lower bound (minus float slack): sweeping candidates in
    # increasing-lo order lets us stop as soon as lo² exceeds the best exact
    # distance found, which usually means evaluating only a few points.
    order = np.argsort(lo, kind="stable")
    best = None
    for idx in order:
        if best is not None and lo[idx] * lo[idx] > float(best[0]) + 1e-12:
            break
        p = outside[idx]
        px = tuple(Fraction(int(c)) for c in p)
        d2, proj = _exact_point_poly_d2(P, px)
        if best is None or d2 < best[0]:
            best = (d2, px, proj)
    return best


def _nearest_outside_l1(P: RationalPolytope) -> Fraction:
    outside = _outside_lattice_points(P)
    lo, _ = _float_dist_bounds(P, outside.astype(np.float64))
    verts = np.array([[float(c) for c in v] for v in P.vertices])
    up1 = np.abs(outside[:, None, :] - verts[None, :, :]).sum(axis=2).min(axis=1)
    # L1 >= L2 >= lo, so lo is a valid lower bound for the L1 sweep too.
    cand = outside[lo <= up1.min() + 1e-6]
    best = None
    for p in cand:
        d1 = _exact_point_poly_l1(P, tuple(Fraction(int(c)) for c in p))
        if best is None or d1 < best:
            best = d1
    return best


def _float_dist_bounds(P: RationalPolytope, pts: np.ndarray):
    """(lower, upper) float bounds on dist(p, P) for each row p of pts.

    Upper: nearest vertex (tightened by edge projections when n = 2).
    Lower: largest normalized facet violation.  A 1e-9 slack absorbs float
    roundoff; the bounds only steer which points get exact evaluation.
    """
    verts = np.array([[float(c) for c in v] for v in P.vertices])
    up = np.linalg.norm(pts[:, None, :] - verts[None, :, :], axis=2).min(axis=1)
    if P.dim == 2 and len(P.vertices) >= 2:
        ring = _hull_2d(list(P.vertices))
        for a, b in zip(ring, ring[1:] + ring[:1]):
            a = np.array([float(c) for c in a])
            b = np.array([float(c) for c in b])
            ab = b - a
            denom = ab @ ab
            if denom == 0:
                continue
            t = np.clip(((pts - a) @ ab) / denom, 0.0, 1.0)
            proj = a + t[:, None] * ab
            up = np.minimum(up, np.linalg.norm(pts - proj, axis=1))
    lo = np.zeros(len(pts))
    for nvec, c in P.halfspaces:
        nv = np.array([float(v) for v in nvec])
        viol = (pts @ nv - float(c)) / np.linalg.norm(nv)
        lo = np.maximum(lo, viol)
    return np.maximum(lo - 1e-9, 0.0), up + 1e-9


def _exact_point_poly_d2(P: RationalPolytope, x: Vec):
    """Exact squared distance from x to P, with the nearest point.

    The closest point lies in the relative interior of some face; its
    affine hull is spanned by at most n+1 vertices (Carathéodory), so the
    minimum over all projections onto affine hulls of small vertex subsets
    that land inside the subset's hull is exact.
    """
    n = P.dim
    verts = P.vertices
    best = None
    for size in range(1, min(len(verts), n + 1) + 1):
        for subset in combinations(verts, size):
            proj = _project_affine(x, subset)
            if proj is None:
                continue
            point, coeffs = proj
            if any(c < 0 for c in coeffs):
                continue
            d2 = sum((a - b) ** 2 for a, b in zip(x, point))
            if best is None or d2 < best[0]:
                best = (d2, point)
    return best


def _exact_point_poly_l1(P: RationalPolytope, x: Vec) -> Fraction:
    """Exact L1 distance from x to P via LP: min Σ|x_i - y_i|, y ∈ P."""
    k = len(P.vertices)
    n = P.dim
    # variables: λ (k), t+ (n), t- (n) with x - Σλv = t+ - t-
    nv = k + 2 * n
    c = [_F0] * k + [_F1] * (2 * n)
    A_eq = []
    b_eq = []
    for j in range(n):
        row = [P.vertices[i][j] for i in range(k)]
        row += [_F1 if t == j else _F0 for t in range(n)]
        row += [-_F1 if t == j else _F0 for t in range(n)]
        A_eq.append(row)
        b_eq.append(x[j])
    A_eq.append([_F1] * k + [_F0] * (2 * n))
    b_eq.append(_F1)
    res = lp_solve(c, A_eq=A_eq, b_eq=b_eq)
    return res.objective


def _project_affine(x, subset):
    """Project x onto the affine hull of ``subset``; return (point, affine
    coefficients) or None if the subset is affinely dependent."""
    base = subset[0]
    dirs = [tuple(p[j] - base[j] for j in range(len(base))) for p in subset[1:]]
    if dirs:
        gram = [[fdot(u, v) for v in dirs] for u in dirs]
        rhs = [fdot(u, tuple(x[j] - base[j] for j in range(len(base)))) for u in dirs]
        from ._intlinalg import det_rational
        if det_rational(gram) == 0:
            return None
        cols = [tuple(gram[i][j] for i in range(len(dirs))) for j in range(len(dirs))]
        t = solve_rational(cols, rhs)
        point = tuple(base[j] + sum(t[i] * dirs[i][j] for i in range(len(dirs)))
                      for j in range(len(base)))
        coeffs = (1 - sum(t),) + tuple(t)
    else:
        point = base
        coeffs = (_F1,)
    return point, coeffs


def distance_growth(S: RationalPolytope, m_max: int):
    """Entries (m, d_m, d_m^(1/m)) for d_m = dist(m·S_m, Z^n ∖ m·S_m).

    S must be full-dimensional; individual m·S_m may still be degenerate
    (tiny m can collapse the refinement), in which case the scan distance
    is computed without the interior hypothesis.
    """
    if S.span_rank < S.dim:
        raise EmptyInterior("distance growth needs a full-dimensional S")
    if m_max < 1:
        raise PreconditionViolated("m_max must be >= 1")
    out = []
    for m in range(1, m_max + 1):
        Sm = refine(S, m)
        P = dilate(Sm, m)
        d2 = _nearest_outside_d2(P)
        d = sqrt(d2)
        out.append((m, d, d ** (1.0 / m)))
    return out
