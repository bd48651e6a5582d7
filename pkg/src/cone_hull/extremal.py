"""Reinhardt bodies in log coordinates and the cone extremal function.

A compact Reinhardt set is stored piecewise: each piece is the preimage,
on a coordinate subtorus, of a compact log-coordinate polytope ch(A).  The
extremal function of the pair (S, K) on the open torus is the conjugate-type
supremum

    V(x) = sup_{s in S} ( <s, x> - phi_A(s) ),     x = Log z,

which this module evaluates as a linear program (exact rational simplex when
all data is rational, HiGHS floats otherwise), together with membership
certificates for the hull  ch(A) - dual cone  and monomial lower bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _accel
from ._exactlp import LPStatus, lp_solve
from ._rational import fdot, frac, fvec
from .errors import (
    DimensionMismatch,
    NoFullSupportPiece,
    PreconditionViolated,
)
from .polytope import (
    ConeRep,
    RationalPolytope,
    _cone_generators,
    dual_cone,
    enumerate_exponents,
    section,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


def _coord(value):
    """Keep exact inputs exact; floats stay floats."""
    if isinstance(value, float):
        return value
    return frac(value)


class ReinhardtBody:
    """Union of torus-invariant pieces, each a log-polytope on a subtorus.

    ``pieces`` is a list of (J, A): J the sorted 0-based support indices of
    the piece, A the vertex list of its log image (length |J| each).  The
    piece with J = (0, ..., n-1) describes K ∩ (C*)^n.
    """

    def __init__(self, dim: int, pieces):
        if dim < 1:
            raise DimensionMismatch("dimension must be positive")
        norm = []
        for J, A in pieces:
            J = tuple(sorted(int(j) for j in J))
            if any(j < 0 or j >= dim for j in J):
                raise DimensionMismatch(f"piece support {J} out of range for dim {dim}")
            if len(set(J)) != len(J):
                raise DimensionMismatch(f"piece support {J} has repeats")
            pts = []
            for a in A:
                a = tuple(_coord(v) for v in a)
                if len(a) != len(J):
                    raise DimensionMismatch(
                        f"log vertex {a} does not match piece support {J}")
                pts.append(a)
            if not pts and J:
                raise PreconditionViolated("a piece needs at least one log vertex")
            if not J:
                pts = [()]
            norm.append((J, tuple(pts)))
        if not norm:
            raise PreconditionViolated("a Reinhardt body needs at least one piece")
        self.dim = dim
        self.pieces = tuple(norm)

    @classmethod
    def torus(cls, dim: int):
        """The unit torus T^n (log image = {0})."""
        return cls(dim, [(tuple(range(dim)), [tuple(0 for _ in range(dim))])])

    @classmethod
    def from_log_vertices(cls, dim: int, A):
        """Full-support body Log^{-1}(ch A)."""
        return cls(dim, [(tuple(range(dim)), A)])

    def full_support_vertices(self):
        full = tuple(range(self.dim))
        for J, A in self.pieces:
            if J == full:
                return A
        raise NoFullSupportPiece(
            "K has no piece meeting (C*)^n; use the axis recursion instead")

    def has_full_support(self) -> bool:
        full = tuple(range(self.dim))
        return any(J == full for J, _ in self.pieces)

    def only_full_support(self) -> bool:
        full = tuple(range(self.dim))
        return all(J == full for J, _ in self.pieces)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for _, A in self.pieces for a in A for c in a)

    def project(self, J) -> "ReinhardtBody":
        """π_J(K): project every piece onto the coordinates J (0-based)."""
        J = tuple(sorted(int(j) for j in J))
        pieces = []
        for Jp, A in self.pieces:
            keep = [t for t, j in enumerate(Jp) if j in J]
            newJ = tuple(J.index(Jp[t]) for t in keep)
            newA = tuple(tuple(a[t] for t in keep) for a in A) or ((),)
            pieces.append((newJ, newA))
        return ReinhardtBody(len(J), pieces)

    def __repr__(self):
        return f"ReinhardtBody(dim={self.dim}, pieces={self.pieces!r})"


@dataclass(frozen=True)
class VskValue:
    value: object          # Fraction on the exact path, float otherwise
    maximizer_s: tuple
    active_a: tuple

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class HullCertificate:
    inside: bool
    decomposition: tuple | None = None   # (a, t) with x = a - t, t in dual cone
    separator: tuple | None = None       # xi in the cone with <x, xi> > phi_A(xi)


def support_A(K: ReinhardtBody, s):
    """phi_A(s) = max over the full-support log vertices of <a, s>."""
    A = K.full_support_vertices()
    s = list(s)
    if len(s) != K.dim:
        raise DimensionMismatch("direction dimension mismatch")
    if K.is_rational() and all(not isinstance(v, float) for v in s):
        return max(fdot(fvec(a), fvec(s)) for a in A)
    return max(sum(float(ai) * float(si) for ai, si in zip(a, s)) for a in A)


def meets_open_orthant(S: RationalPolytope) -> bool:
    """Exact test S ∩ R^{*n}_+ ≠ ∅: per coordinate, some vertex is positive
    there (then the uniform vertex average is a strictly positive point)."""
    return all(any(v[j] > 0 for v in S.vertices) for j in range(S.dim))


def _check_formula_precondition(S: RationalPolytope, K: ReinhardtBody):
    if K.dim != S.dim:
        raise DimensionMismatch("S and K dimensions differ")
    if not (meets_open_orthant(S) or K.only_full_support()):
        raise PreconditionViolated(
            "S misses the open positive orthant and K has an axis piece; "
            "the log-coordinate formula needs one of the two hypotheses")


def eval_vsk(S: RationalPolytope, K: ReinhardtBody, x) -> VskValue:
    """sup over s ∈ S of <s, x> - phi_A(s), by linear programming.

    Exact rational simplex when A and x are rational; otherwise a float
    HiGHS solve with tolerance 1e-9.
    """
    _check_formula_precondition(S, K)
    A = K.full_support_vertices()
    x = list(x)
    if len(x) != S.dim:
        raise DimensionMismatch("query point dimension mismatch")
    exact = K.is_rational() and all(not isinstance(v, float) for v in x)
    if exact:
        return _eval_vsk_exact(S, A, fvec(x))
    return _eval_vsk_float(S, A, [float(v) for v in x])


def _eval_vsk_exact(S, A, x):
    verts = S.vertices
    k = len(verts)
    d = [fdot(v, x) for v in verts]
    c = d + [-_F1]                      # maximize sum λ_i d_i − u
    A_eq = [[_F1] * k + [_F0]]
    b_eq = [_F1]
    A_ub = []
    b_ub = []
    for a in A:
        a = fvec(a)
        A_ub.append([fdot(a, v) for v in verts] + [-_F1])
        b_ub.append(_F0)
    res = lp_solve(c, A_eq=A_eq, b_eq=b_eq, A_ub=A_ub, b_ub=b_ub,
                   free=[k], maximize=True)
    if res.status is not LPStatus.OPTIMAL:
        raise PreconditionViolated(f"extremal LP did not solve: {res.status}")
    lam = res.x[:k]
    s_star = tuple(sum(lam[i] * verts[i][j] for i in range(k)) for j in range(S.dim))
    active = max(A, key=lambda a: fdot(fvec(a), s_star))
    return VskValue(value=res.objective, maximizer_s=s_star, active_a=tuple(active))


def _eval_vsk_float(S, A, x):
    from scipy.optimize import linprog

    verts = [[float(c) for c in v] for v in S.vertices]
    k = len(verts)
    d = [sum(vi * xi for vi, xi in zip(v, x)) for v in verts]
    c = [-di for di in d] + [1.0]
    A_eq = [[1.0] * k + [0.0]]
    A_ub = []
    for a in A:
        af = [float(v) for v in a]
        A_ub.append([sum(ai * vi for ai, vi in zip(af, v)) for v in verts] + [-1.0])
    res = linprog(c, A_eq=A_eq, b_eq=[1.0],
                  A_ub=A_ub or None, b_ub=[0.0] * len(A_ub) or None,
                  bounds=[(0, None)] * k + [(None, None)], method="highs")
    if not res.success:
        raise PreconditionViolated(f"extremal LP did not solve: {res.message}")
    lam = res.x[:k]
    s_star = tuple(sum(lam[i] * verts[i][j] for i in range(k)) for j in range(S.dim))
    active = max(A, key=lambda a: sum(float(ai) * si for ai, si in zip(a, s_star)))
    return VskValue(value=-res.fun, maximizer_s=s_star, active_a=tuple(active))


def hull_membership(S: RationalPolytope, K: ReinhardtBody, x) -> HullCertificate:
    """Membership of x in ch(A) - Γ° with certificates, by LP feasibility.

    Runs in exact arithmetic regardless of input type (floats are exact
    binary rationals).  Inside: a decomposition x = a - t with a ∈ ch A and
    t ∈ Γ°.  Outside: a separator ξ ∈ Γ with <x, ξ> > phi_A(ξ), assembled
    from the Farkas certificate of the infeasible system.
    """
    _check_formula_precondition(S, K)
    A = [fvec(a) for a in K.full_support_vertices()]
    x = fvec(x)
    n = S.dim
    if len(x) != n:
        raise DimensionMismatch("query point dimension mismatch")
    gens = _cone_generators(S)
    k = len(A)
    # variables: λ (k, >= 0), t (n, free)
    A_eq = []
    b_eq = []
    for j in range(n):
        A_eq.append([A[i][j] for i in range(k)] +
                    [-_F1 if i == j else _F0 for i in range(n)])
        b_eq.append(x[j])
    A_eq.append([_F1] * k + [_F0] * n)
    b_eq.append(_F1)
    A_ub = []
    for g in gens:
        A_ub.append([_F0] * k + [-Fraction(gi) for gi in g])
    res = lp_solve([_F0] * (k + n), A_eq=A_eq, b_eq=b_eq,
                   A_ub=A_ub, b_ub=[_F0] * len(A_ub),
                   free=range(k, k + n))
    if res.status is LPStatus.OPTIMAL:
        lam = res.x[:k]
        t = res.x[k:]
        a_point = tuple(sum(lam[i] * A[i][j] for i in range(k)) for j in range(n))
        return HullCertificate(inside=True, decomposition=(a_point, tuple(t)))
    # Farkas rows: n coordinate equalities, the simplex equality, then the
    # cone inequalities; ξ = y[:n] is a nonnegative combination of the
    # generators, so ξ ∈ Γ and <ξ, x> > -c >= phi_A(ξ).  Positive rescaling
    # preserves both properties, so the separator is reported primitive.
    from ._rational import primitive

    xi = tuple(Fraction(v) for v in primitive(res.farkas[:n]))
    return HullCertificate(inside=False, separator=xi)


def siciak_monomial(S: RationalPolytope, K: ReinhardtBody, m: int, x) -> float:
    """Monomial lower bound of the degree-m extremal approximant:

        max over α ∈ (mS) ∩ N^n of  ( <α, x> - phi_A(α) ) / m.
    """
    if m < 1:
        raise PreconditionViolated("m must be >= 1")
    A = K.full_support_vertices()
    x = [float(v) for v in x]
    if len(x) != S.dim:
        raise DimensionMismatch("query point dimension mismatch")
    exps = enumerate_exponents(S, m).as_array()
    a_arr = np.array([[float(c) for c in a] for a in A], dtype=np.float64)
    scores = _accel.monomial_scores(exps, np.array(x, dtype=np.float64), a_arr)
    return float(scores.max()) / m


def vsk_on_axes(S: RationalPolytope, K: ReinhardtBody, J, xJ):
    """Extremal value on the coordinate subspace C^J via the section rule
    V(z) = V_{S_J, K_J}(π_J z).

    When the section S_J collapses to {0} the cone polynomials are constant
    on C^J and the value is identically zero.
    """
    J = tuple(sorted(int(j) for j in J))
    if not J:
        raise DimensionMismatch("J must be nonempty")
    SJ = section(S, J)
    if all(not any(v) for v in SJ.vertices):
        return VskValue(value=_F0, maximizer_s=(_F0,) * len(J),
                        active_a=(0.0,) * len(J))
    KJ = K.project(J)
    xJ = list(xJ)
    if len(xJ) != len(J):
        raise DimensionMismatch("xJ must match the size of J")
    return eval_vsk(SJ, KJ, xJ)


def hull_sampler(S: RationalPolytope, K: ReinhardtBody, depth: float,
                 count: int, seed: int = 0):
    """Deterministic seeded samples of the log-coordinate hull ch(A) - Γ°.

    Samples are a - t with a a convex combination of the log vertices and t
    a nonnegative combination of dual-cone directions of length <= depth,
    so membership holds by construction.  The vertex barycenter and the
    pure vertices (t = 0) are always included first.
    """
    if count < 0:
        raise PreconditionViolated("count must be >= 0")
    if count == 0:
        return []
    A = np.array([[float(c) for c in a] for a in K.full_support_vertices()],
                 dtype=np.float64)
    n = S.dim
    dirs = _dual_directions(S, seed)
    rng = np.random.default_rng(seed)
    samples = []
    bary = A.mean(axis=0)
    fixed = [bary] + [A[i] for i in range(len(A))]
    for p in fixed[:count]:
        samples.append(tuple(float(v) for v in p))
    while len(samples) < count:
        w = rng.dirichlet(np.ones(len(A)))
        a = w @ A
        t = np.zeros(n)
        if depth > 0 and len(dirs):
            coef = rng.random(len(dirs))
            t = coef @ dirs
            norm = np.linalg.norm(t)
            if norm > 0:
                t = t * (rng.random() * depth / norm)
        samples.append(tuple(float(v) for v in a - t))
    return samples


def _dual_directions(S: RationalPolytope, seed: int) -> np.ndarray:
    """Unit directions spanning the dual cone: exact rays for n <= 3,
    Monte-Carlo feasible directions otherwise."""
    n = S.dim
    if n <= 3:
        rep: ConeRep = dual_cone(S)
        rays = rep.dual_generators or ()
        arr = []
        for r in rays:
            v = np.array(r, dtype=np.float64)
            norm = np.linalg.norm(v)
            if norm > 0:
                arr.append(v / norm)
        return np.array(arr) if arr else np.empty((0, n))
    gens = [np.array(g, dtype=np.float64) for g in _cone_generators(S)]
    rng = np.random.default_rng(seed ^ 0x5EED)
    out = []
    tries = 0
    while len(out) < 4 * n and tries < 20000:
        d = rng.normal(size=n)
        tries += 1
        if all(g @ d >= 0 for g in gens):
            out.append(d / np.linalg.norm(d))
    return np.array(out) if out else np.empty((0, n))
