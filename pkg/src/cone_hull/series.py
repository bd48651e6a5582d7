"""Cone-supported power series and the approximation experiments.

A ConeSeries is a formal series whose exponents live in Γ ∩ N^n for the
cone Γ = R_+S; truncation at total degree N lands in the degree-m_N
polynomial class with the sharp per-exponent scaling from an exact ray LP.
The experiment helpers measure uniform errors on a compact Reinhardt set
versus its hull samples, produce escape directions certifying that
exponents outside Γ blow up inside the hull, and describe the hull of a
log-domain (the region any cone series convergent on it extends to).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._exactlp import LPStatus, lp_solve
from ._rational import fdot, fvec
from .errors import (
    BetaInCone,
    DimensionMismatch,
    DivergentOnSample,
    PreconditionViolated,
)
from .extremal import HullCertificate, ReinhardtBody, hull_membership, hull_sampler
from .polytope import (
    RationalPolytope,
    _cone_generators,
    cone_contains,
    cone_halfspaces,
    minimal_scaling,
    support,
)

_OVERFLOW = 1e300
_F1 = Fraction(1)


@dataclass(frozen=True)
class TruncationReport:
    N: int
    m_N: int
    sup_err_K: float
    sup_err_hull: float
    sup_f_K: float
    sup_f_hull: float
    norm_equal_ok: bool


class ConeSeries:
    """Power series with exponent support in Γ ∩ N^n.

    Either an explicit finite term map {alpha: coefficient} or the built-in
    geometric family sum_k c^k z^(k alpha0).  Exponents are verified against
    the cone twice at construction: the exact facet inequalities of Γ and,
    independently, feasibility of the ray LP.
    """

    def __init__(self, S: RationalPolytope, terms=None, geometric=None):
        self.S = S
        self.dim = S.dim
        if (terms is None) == (geometric is None):
            raise PreconditionViolated("give exactly one of terms / geometric")
        if geometric is not None:
            alpha0, c = geometric
            alpha0 = tuple(int(a) for a in alpha0)
            if len(alpha0) != S.dim or not any(alpha0):
                raise DimensionMismatch("alpha0 must be a nonzero exponent of dimension n")
            self._check_exponent(alpha0)
            self.geometric = (alpha0, complex(c))
            self.terms = None
        else:
            self.geometric = None
            clean = {}
            for alpha, coeff in dict(terms).items():
                alpha = tuple(int(a) for a in alpha)
                if len(alpha) != S.dim:
                    raise DimensionMismatch(f"exponent {alpha} has wrong dimension")
                if any(a < 0 for a in alpha):
                    raise PreconditionViolated(f"exponent {alpha} is not in N^n")
                self._check_exponent(alpha)
                clean[alpha] = complex(coeff)
            self.terms = dict(sorted(clean.items()))

    def _check_exponent(self, alpha):
        # dual route: facet inequalities of the cone, then the ray LP
        if not cone_contains(self.S, alpha):
            raise PreconditionViolated(
                f"exponent {alpha} violates a facet inequality of the cone")
        if any(alpha) and minimal_scaling(self.S, alpha) is None:
            raise PreconditionViolated(
                f"exponent {alpha} is not a nonnegative combination of the cone rays")

    # -- term access ------------------------------------------------------

    def terms_up_to(self, N: int):
        """All (alpha, coefficient) with |alpha|_1 <= N."""
        if self.geometric is not None:
            alpha0, c = self.geometric
            deg = sum(alpha0)
            out = []
            k = 0
            coeff = complex(1.0)
            while k * deg <= N:
                out.append((tuple(k * a for a in alpha0), coeff))
                coeff *= c
                k += 1
            return out
        return [(a, co) for a, co in self.terms.items() if sum(a) <= N]

    def nonnegative_real(self) -> bool:
        if self.geometric is not None:
            _, c = self.geometric
            return c.imag == 0 and c.real >= 0
        return all(co.imag == 0 and co.real >= 0 for co in self.terms.values())

    # -- evaluation -------------------------------------------------------

    def eval_log(self, x) -> complex:
        """Value at the positive real point z = e^x (full series)."""
        if self.geometric is not None:
            alpha0, c = self.geometric
            w = math.exp(sum(a * xi for a, xi in zip(alpha0, x)))
            if abs(c) * w >= 1.0:
                raise DivergentOnSample(
                    f"geometric ratio {abs(c) * w:.6g} >= 1 at sample {tuple(x)}")
            return 1.0 / (1.0 - c * w)
        total = complex(0.0)
        for alpha, coeff in self.terms.items():
            term = coeff * math.exp(sum(a * xi for a, xi in zip(alpha, x)))
            if abs(term) > _OVERFLOW:
                raise DivergentOnSample(f"term {alpha} overflows at sample {tuple(x)}")
            total += term
        return total

    def tail_log(self, N: int, x) -> float:
        """|f - f_N| at the positive real point e^x (exact for nonnegative
        real coefficients; general series are evaluated term by term)."""
        if self.geometric is not None:
            alpha0, c = self.geometric
            deg = sum(alpha0)
            w = math.exp(sum(a * xi for a, xi in zip(alpha0, x)))
            rho = c * w
            if abs(rho) >= 1.0:
                raise DivergentOnSample(
                    f"geometric ratio {abs(rho):.6g} >= 1 at sample {tuple(x)}")
            K0 = N // deg
            return abs(rho) ** (K0 + 1) / abs(1.0 - rho)
        total = 0.0
        for alpha, coeff in self.terms.items():
            if sum(alpha) > N:
                term = abs(coeff) * math.exp(sum(a * xi for a, xi in zip(alpha, x)))
                if term > _OVERFLOW:
                    raise DivergentOnSample(f"term {alpha} overflows at sample {tuple(x)}")
                total += term
        return total


def truncate(f: ConeSeries, N: int):
    """Partial sum terms with |alpha|_1 <= N and the minimal class degree m_N.

    m_N is the max over retained exponents of the least integer m with
    alpha ∈ mS, each computed by the exact ray LP; the constant-only
    truncation has m_N = 0 by convention.
    """
    if N < 0:
        raise PreconditionViolated("N must be >= 0")
    terms = f.terms_up_to(N)
    m_N = 0
    for alpha, _ in terms:
        if not any(alpha):
            continue
        mstar = minimal_scaling(f.S, alpha)
        if mstar is None:
            raise PreconditionViolated(f"exponent {alpha} escaped the cone")
        m_N = max(m_N, math.ceil(mstar))
    return terms, m_N


def sup_error(f: ConeSeries, N: int, samples, angles: int = 64) -> float:
    """Max over log-coordinate samples of |f - f_N| at z = e^x.

    For nonnegative real coefficients the torus maximum of the modulus sits
    at the positive real point, so the sample value is exact; otherwise the
    modulus is maximized over a torus grid (a lower bound on the true sup).
    """
    if not samples:
        return 0.0
    if f.nonnegative_real():
        return max(f.tail_log(N, x) for x in samples)
    best = 0.0
    for x in samples:
        best = max(best, _torus_tail_max(f, N, x, angles))
    return best


def _torus_tail_max(f: ConeSeries, N: int, x, angles: int) -> float:
    n = f.dim
    grids = np.meshgrid(*[np.linspace(0.0, 2.0 * math.pi, angles, endpoint=False)
                          for _ in range(n)], indexing="ij")
    thetas = np.stack([g.ravel() for g in grids], axis=1)   # (G, n)
    tail = [(a, c) for a, c in _all_terms_bounded(f, x) if sum(a) > N]
    if not tail:
        return 0.0
    total = np.zeros(len(thetas), dtype=np.complex128)
    for alpha, coeff in tail:
        mag = abs(coeff) * math.exp(sum(a * xi for a, xi in zip(alpha, x)))
        if mag > _OVERFLOW:
            raise DivergentOnSample(f"term {alpha} overflows at sample {tuple(x)}")
        phase = thetas @ np.array(alpha, dtype=np.float64)
        total += coeff * math.exp(sum(a * xi for a, xi in zip(alpha, x))) * np.exp(1j * phase)
    return float(np.abs(total).max())


def _all_terms_bounded(f: ConeSeries, x, tol: float = 1e-18):
    """Terms of f with modulus at e^x above a negligibility cutoff."""
    if f.geometric is None:
        return list(f.terms.items())
    alpha0, c = f.geometric
    w = math.exp(sum(a * xi for a, xi in zip(alpha0, x)))
    if abs(c) * w >= 1.0:
        raise DivergentOnSample("geometric series diverges at a torus sample")
    out = []
    k = 0
    coeff = complex(1.0)
    while abs(coeff) * w ** k > tol or k <= 1:
        out.append((tuple(k * a for a in alpha0), coeff))
        coeff *= c
        k += 1
        if k > 10000:
            break
    return out


def hull_vs_K_gap(f: ConeSeries, N: int, S: RationalPolytope, K: ReinhardtBody,
                  depth: float, count: int, seed: int = 0) -> TruncationReport:
    """Measure sup|f| and the truncation error on K samples vs hull samples.

    K samples are depth-0 hull samples (the log polytope itself); hull
    samples recede depth units along dual-cone directions.  For a series
    bounded on the hull the two sup norms agree (norm-equality check with
    relative tolerance 1e-6).
    """
    k_samples = hull_sampler(S, K, 0.0, count, seed)
    h_samples = hull_sampler(S, K, depth, count, seed)
    _, m_N = truncate(f, N)
    if f.nonnegative_real():
        sup_f_K = max(abs(f.eval_log(x)) for x in k_samples)
        sup_f_hull = max(abs(f.eval_log(x)) for x in h_samples)
    else:
        sup_f_K = max(_torus_value_max(f, x) for x in k_samples)
        sup_f_hull = max(_torus_value_max(f, x) for x in h_samples)
    err_K = sup_error(f, N, k_samples)
    err_hull = sup_error(f, N, h_samples)
    ok = sup_f_hull <= sup_f_K * (1.0 + 1e-6) + 1e-12
    return TruncationReport(N=N, m_N=m_N, sup_err_K=err_K, sup_err_hull=err_hull,
                            sup_f_K=sup_f_K, sup_f_hull=sup_f_hull, norm_equal_ok=ok)


def _torus_value_max(f: ConeSeries, x, angles: int = 64) -> float:
    return _torus_tail_max(f, -1, x, angles)


def escape_witness(S: RationalPolytope, beta, A=None, ts=(0, 5, 10, 15, 20)):
    """Escape direction for an exponent outside the cone.

    Returns (xi, table): xi is rational with support(S, xi) <= 0 and
    <beta, xi> >= 1, found by exact LP feasibility; the table lists
    (t, |z^beta|) along the hull ray x = x0 + t xi starting at the
    barycenter x0 of ch A (default: the torus, A = {0}).
    """
    beta = tuple(int(b) for b in beta)
    if len(beta) != S.dim:
        raise DimensionMismatch("beta dimension mismatch")
    k = len(S.vertices)
    feas = lp_solve([_F1] * k,
                    A_eq=[[S.vertices[i][j] for i in range(k)] for j in range(S.dim)],
                    b_eq=list(beta))
    if feas.status is LPStatus.OPTIMAL:
        raise BetaInCone(f"{beta} lies in the cone; its monomial is hull-bounded")
    n = S.dim
    A_ub = [[v[j] for j in range(n)] for v in S.vertices]
    b_ub = [0] * len(A_ub)
    A_ub.append([-b for b in beta])
    b_ub.append(-1)
    res = lp_solve([0] * n, A_ub=A_ub, b_ub=b_ub, free=range(n))
    if res.status is not LPStatus.OPTIMAL:
        raise PreconditionViolated("no escape direction found (should not happen)")
    xi = res.x
    if A is None:
        x0 = [0.0] * n
    else:
        A = [fvec(a) for a in A]
        x0 = [float(sum(a[j] for a in A)) / len(A) for j in range(n)]
    table = []
    for t in ts:
        expo = sum(float(b) * (x0[j] + t * float(xi[j])) for j, b in enumerate(beta))
        if expo > 690.0:
            table.append((t, math.inf))
        else:
            table.append((t, math.exp(expo)))
    return tuple(xi), table


@dataclass(frozen=True)
class HullDescription:
    """The log-domain hull ch(D) - Γ°: every cone series convergent on D
    extends there.  ``halfspaces`` lists valid inequalities (xi, rhs) with
    <xi, x> <= rhs on the hull; ``complete`` marks whether they cut it out
    exactly (guaranteed for singleton D and for n <= 2)."""

    S: RationalPolytope
    D_vertices: tuple
    halfspaces: tuple
    complete: bool

    def body(self) -> ReinhardtBody:
        return ReinhardtBody.from_log_vertices(self.S.dim, self.D_vertices)

    def member(self, x) -> HullCertificate:
        return hull_membership(self.S, self.body(), x)

    def member_halfspace(self, x) -> bool:
        if not self.complete:
            raise PreconditionViolated("half-space description is partial for this instance")
        return all(sum(float(h) * float(v) for h, v in zip(xi, x)) <= float(rhs) + 1e-12
                   for xi, rhs in self.halfspaces)


def convergence_hull(S: RationalPolytope, D_vertices) -> HullDescription:
    """Describe ch(D) - Γ° for a log-domain vertex cloud D.

    Membership queries delegate to the certified LP; the half-space list
    uses the extreme rays of Γ plus any facet normals of ch D lying in Γ
    (complete for singletons and in the plane).
    """
    D = [fvec(d) for d in D_vertices]
    if not D:
        raise PreconditionViolated("D must be nonempty")
    if any(len(d) != S.dim for d in D):
        raise DimensionMismatch("D vertices must have dimension n")
    gens = _cone_generators(S)
    extreme = [g for g in gens if not _in_subcone(S, g, [h for h in gens if h != g])]
    normals = list(extreme)
    if len(D) > 1:
        body = _log_polytope_halfspaces(D)
        for nvec in body:
            if cone_contains(S, nvec):
                normals.append(nvec)
    halfspaces = tuple(sorted({(tuple(nv), max(fdot(fvec(nv), d) for d in D))
                               for nv in normals}))
    complete = len(D) == 1 or S.dim <= 2
    return HullDescription(S=S, D_vertices=tuple(D), halfspaces=halfspaces,
                           complete=complete)


def _in_subcone(S, g, others):
    if not others:
        return False
    k = len(others)
    res = lp_solve([_F1] * k,
                   A_eq=[[others[i][j] for i in range(k)] for j in range(S.dim)],
                   b_eq=list(g))
    return res.status is LPStatus.OPTIMAL


def _log_polytope_halfspaces(D):
    """Facet normals of ch(D) for a rational point cloud (any sign).

    Translation-invariant: works on the differences from D[0], in span
    coordinates, then lifts back; only the outward normal directions are
    returned (the hull rhs is recomputed by the caller).
    """
    from itertools import combinations

    from ._intlinalg import solve_rational, span_lattice_basis
    from ._rational import clear_denominators, primitive
    from .polytope import _lift_normal, _rational_kernel

    base = D[0]
    n = len(base)
    dirs = [tuple(d[j] - base[j] for j in range(n)) for d in D[1:]]
    dirs = [v for v in dirs if any(v)]
    if not dirs:
        return []
    basis = span_lattice_basis([clear_denominators(v) for v in dirs])
    ell = len(basis)
    coords = [solve_rational(basis, tuple(d[j] - base[j] for j in range(n))) for d in D]
    normals = set()
    for subset in combinations(range(len(coords)), ell):
        ref = coords[subset[0]]
        rows = [tuple(coords[i][j] - ref[j] for j in range(ell)) for i in subset[1:]]
        kern = _rational_kernel(rows, ell)
        if len(kern) != 1:
            continue
        eta = kern[0]
        c = sum(eta[j] * ref[j] for j in range(ell))
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
            eta = tuple(-e for e in eta)
        normals.add(primitive(_lift_normal(basis, eta, n)))
    return sorted(normals)
