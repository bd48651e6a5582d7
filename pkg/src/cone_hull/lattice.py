"""Integer-linear-algebra services for the exponent cone.

Covers the degenerate (lower-dimensional) side of the theory: picking
independent exponents, monomial point-separation certificates, the
Smith-normal-form fiber map for empty-interior exponent sets, and the
log-coordinate pullback boxes that make monomial maps proper.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._intlinalg import (
    complete_primitive,
    det_rational,
    invert_unimodular,
    kernel_lattice_basis,
    mat_mul,
    maximal_minor_gcd,
    rational_rank,
    solve_rational,
    span_lattice_basis,
)
from ._rational import clear_denominators, fdot, fvec, primitive
from .errors import (
    BetaInCone,
    DimensionMismatch,
    EmptyInterior,
    EmptyKernel,
    IdenticalPoints,
    PreconditionViolated,
    ZeroCoordinate,
)
from .polytope import RationalPolytope, cone_contains, _rational_kernel

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LatticeMap:
    """Monomial change of variables for a lower-dimensional exponent set.

    ``matrix_L``     n x ell integer matrix; columns generate
                     (span_R S) ∩ Z^n and the cone R_+S has nonnegative
                     coordinates in them;
    ``kernel_gens``  n x (n-ell) integer matrix; columns generate the
                     lattice (span_R S)^⊥ ∩ Z^n;
    ``T_vertices``   vertices of T = L^{-1}(S), all in Q^ell_+.
    """

    dim: int
    ell: int
    matrix_L: tuple[tuple[int, ...], ...]      # row-major, n rows x ell cols
    kernel_gens: tuple[tuple[int, ...], ...]   # row-major, n rows x (n-ell) cols
    T_vertices: tuple[tuple[Fraction, ...], ...]

    def columns(self):
        return [tuple(self.matrix_L[i][j] for i in range(self.dim))
                for j in range(self.ell)]

    def kernel_columns(self):
        width = self.dim - self.ell
        return [tuple(self.kernel_gens[i][j] for i in range(self.dim))
                for j in range(width)]

    def monomial_map(self, z):
        """F_L(z) = (z^{L(e_1)}, ..., z^{L(e_ell)})."""
        cols = self.columns()
        return tuple(_zpow(z, col) for col in cols)


@dataclass(frozen=True)
class SeparationCertificate:
    alpha: tuple[int, ...]
    witness_kind: str  # "modulus-differs" | "argument-differs"


def _zpow(z, alpha):
    out = complex(1.0)
    for zj, aj in zip(z, alpha):
        if aj:
            out *= complex(zj) ** aj
    return out


# ---------------------------------------------------------------------------
# independent exponents and point separation


def _lattice_cone_points_by_degree(S: RationalPolytope, max_degree: int = 400):
    """Yield points of R_+S ∩ N^n ordered by (|alpha|_1, lex)."""
    n = S.dim
    for d in range(1, max_degree + 1):
        for alpha in _compositions(d, n):
            if cone_contains(S, alpha):
                yield alpha


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def independent_exponents(S: RationalPolytope):
    """n linearly independent lattice points of Γ = R_+S, minimal degree first."""
    n = S.dim
    if S.span_rank < n:
        raise EmptyInterior(
            "S is lower-dimensional; use fiber_structure for the degenerate case")
    chosen = []
    for alpha in _lattice_cone_points_by_degree(S):
        if rational_rank(chosen + [alpha]) > len(chosen):
            chosen.append(alpha)
            if len(chosen) == n:
                return [tuple(a) for a in chosen]
    raise PreconditionViolated("could not find n independent lattice points in the cone")


def _interior_lattice_point(S: RationalPolytope):
    """Smallest-degree alpha ∈ Γ ∩ N^n with alpha + Σ ⊂ Γ."""
    n = S.dim
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for alpha in _lattice_cone_points_by_degree(S):
        if all(cone_contains(S, tuple(a + e for a, e in zip(alpha, ei))) for ei in basis):
            return alpha
    raise PreconditionViolated("no interior lattice point found in the cone")


def separate_points(S: RationalPolytope, z, w, tol: float = 1e-12) -> SeparationCertificate:
    """A monomial exponent alpha ∈ Γ ∩ N^n with z^alpha ≠ w^alpha.

    Follows the two cases of the separation argument: differing moduli are
    caught by independent exponents applied to Log z - Log w; equal moduli
    (rotation only) by an interior exponent alpha with the choice between
    alpha and alpha + e_j.
    """
    z = tuple(complex(v) for v in z)
    w = tuple(complex(v) for v in w)
    n = S.dim
    if len(z) != n or len(w) != n:
        raise DimensionMismatch("points must have the same dimension as S")
    if any(v == 0 for v in z) or any(v == 0 for v in w):
        raise ZeroCoordinate("separation needs points of the open torus (C*)^n")
    if z == w:
        raise IdenticalPoints("the points coincide")
    if S.span_rank < n:
        raise EmptyInterior("monomial separation needs a full-dimensional S")

    logdiff = [math.log(abs(a)) - math.log(abs(b)) for a, b in zip(z, w)]
    alphas = independent_exponents(S)
    scored = sorted(alphas, key=lambda a: -abs(sum(x * y for x, y in zip(a, logdiff))))
    best = scored[0]
    if abs(sum(x * y for x, y in zip(best, logdiff))) > 1e-9:
        if abs(_zpow(z, best) - _zpow(w, best)) > tol:
            return SeparationCertificate(alpha=best, witness_kind="modulus-differs")

    argdiff = [cmath.phase(a) - cmath.phase(b) for a, b in zip(z, w)]
    alpha0 = _interior_lattice_point(S)
    candidates = [alpha0]
    for j in range(n):
        frac_j = (argdiff[j] / _TWO_PI) % 1.0
        if min(frac_j, 1.0 - frac_j) > 1e-9:
            candidates.append(tuple(a + int(i == j) for i, a in enumerate(alpha0)))
    for beta in candidates:
        if abs(_zpow(z, beta) - _zpow(w, beta)) > tol:
            return SeparationCertificate(alpha=beta, witness_kind="argument-differs")

    # Numerically marginal inputs: scan the cone by degree for any witness.
    for alpha in _lattice_cone_points_by_degree(S, max_degree=60):
        if abs(_zpow(z, alpha) - _zpow(w, alpha)) > tol:
            kind = ("modulus-differs"
                    if abs(abs(_zpow(z, alpha)) - abs(_zpow(w, alpha))) > tol
                    else "argument-differs")
            return SeparationCertificate(alpha=alpha, witness_kind=kind)
    raise PreconditionViolated("points are numerically inseparable at the given tolerance")


# ---------------------------------------------------------------------------
# fiber structure (Smith normal form)


def fiber_structure(S: RationalPolytope) -> LatticeMap:
    """The lattice map of span_R S: columns generate (span_R S) ∩ Z^n and the
    preimage T = L^{-1}(S) lands in the nonnegative orthant.

    For full-dimensional S this is the identity with empty kernel.
    """
    n = S.dim
    ell = S.span_rank
    if ell == n:
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return LatticeMap(dim=n, ell=n, matrix_L=eye, kernel_gens=tuple(() for _ in range(n)),
                          T_vertices=tuple(S.vertices))
    if ell == 0:
        kernel = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return LatticeMap(dim=n, ell=0, matrix_L=tuple(() for _ in range(n)),
                          kernel_gens=kernel, T_vertices=((),))

    cols0 = span_lattice_basis([clear_denominators(v) for v in S.vertices if any(v)])
    gens = sorted({primitive(v) for v in S.vertices if any(v)})
    gcoords = [solve_rational(cols0, g) for g in gens]

    M = _orthant_basis(gcoords, ell)
    Minv = invert_unimodular(M)
    # L columns: L0 · M
    L_rows = mat_mul([[cols0[j][i] for j in range(ell)] for i in range(n)], M)
    L_cols = [tuple(L_rows[i][j] for i in range(n)) for j in range(ell)]

    kernel = kernel_lattice_basis(cols0)
    kernel = [_sign_normalized(k) for k in kernel]
    kernel_rows = tuple(tuple(k[i] for k in kernel) for i in range(n))

    T_vertices = []
    for v in S.vertices:
        t = solve_rational(L_cols, v)
        if any(c < 0 for c in t):
            raise PreconditionViolated(f"internal: T vertex {t} left the orthant")
        T_vertices.append(tuple(t))

    return LatticeMap(dim=n, ell=ell,
                      matrix_L=tuple(tuple(row) for row in L_rows),
                      kernel_gens=kernel_rows,
                      T_vertices=tuple(T_vertices))


def _sign_normalized(vec):
    for v in vec:
        if v:
            return tuple(x for x in vec) if v > 0 else tuple(-x for x in vec)
    return tuple(vec)


def _orthant_basis(gcoords, ell):
    """Unimodular integer M (ell x ell) whose column cone contains every
    coordinate vector in ``gcoords``.

    Works in the dual: picks an interior lattice vector v of
    C* = {y : <g, y> >= 0 ∀ g}, extends it to a unimodular basis, size-reduces
    the completion against v, shears each remaining basis vector into C*
    along v with the least admissible multiple, and inverts/transposes.
    """
    if ell == 1:
        sign = 1 if gcoords[0][0] > 0 else -1
        return [[sign]]
    rays = _extreme_rays(gcoords, ell)
    v_sum = [sum(Fraction(r[j]) for r in rays) for j in range(ell)]
    v = primitive(v_sum)
    assert all(fdot(g, v) > 0 for g in gcoords), "dual interior vector failed"
    basis = complete_primitive(v)  # columns: v, u_2, ..., u_ell
    u_cols = [tuple(basis[i][j] for i in range(ell)) for j in range(ell)]
    vv = fdot(v, v)
    N_cols = [u_cols[0]]
    for u in u_cols[1:]:
        # adding multiples of v keeps det(N) = ±1; reduce, then lift into C*
        shift = round(fdot(u, v) / vv)
        u = tuple(a - shift * b for a, b in zip(u, v))
        k = 0
        for g in gcoords:
            gu, gv = fdot(g, u), fdot(g, v)
            if gu < 0:
                k = max(k, math.ceil(-gu / gv))
        N_cols.append(tuple(k * a + b for a, b in zip(v, u)))
    N = [[N_cols[j][i] for j in range(ell)] for i in range(ell)]
    Ninv = invert_unimodular(N)
    # M = N^{-T}: columns of N lie in C*, so cone(M) ⊇ cone(gcoords).
    return [[Ninv[j][i] for j in range(ell)] for i in range(ell)]


def _extreme_rays(normals, dim):
    """Extreme rays of the full-dimensional cone {y : <g, y> >= 0 ∀ g}."""
    rays = set()
    for subset in combinations(range(len(normals)), dim - 1):
        rows = [normals[i] for i in subset]
        kern = _rational_kernel(rows, dim)
        if len(kern) != 1:
            continue
        r = kern[0]
        for cand in (r, tuple(-x for x in r)):
            if all(fdot(g, cand) >= 0 for g in normals):
                rays.add(cand)
    if not rays:
        raise PreconditionViolated("dual cone has no extreme rays (cone not pointed?)")
    return sorted(rays)


def fiber_through(S: RationalPolytope, z, t, lattice_map: LatticeMap | None = None):
    """Evaluate the fiber parameterization Υ_z(t) = (z_1 t^{β_1}, ..., z_n t^{β_n}).

    β_j is the j-th row of the kernel-generator matrix; the result satisfies
    F_L(Υ_z(t)) = F_L(z) and lies in the S-hull of {z}.
    """
    lm = lattice_map if lattice_map is not None else fiber_structure(S)
    if lm.ell == lm.dim:
        raise EmptyKernel("S is full-dimensional: the fiber is the point itself")
    z = tuple(complex(v) for v in z)
    t = tuple(complex(v) for v in t)
    if len(t) != lm.dim - lm.ell:
        raise DimensionMismatch(f"t must have dimension {lm.dim - lm.ell}")
    if any(v == 0 for v in t) or any(v == 0 for v in z):
        raise ZeroCoordinate("fiber parameterization lives on the open torus")
    out = []
    for j in range(lm.dim):
        beta_j = lm.kernel_gens[j]
        out.append(z[j] * _zpow(t, beta_j))
    return tuple(out)


# ---------------------------------------------------------------------------
# proper monomial maps


def proper_box_pullback(alphas, outer_radius: float, inner_radius: float):
    """Log-coordinate box containing Log F^{-1}(polyannulus(r, R)) for the
    monomial map F(z) = (z^{α_1}, ..., z^{α_n}).

    The box is the exact image of [log r, log R]^n under the inverse
    transpose of the exponent matrix, tightened per coordinate over the
    corners.
    """
    if not (0 < inner_radius < outer_radius):
        raise PreconditionViolated("need 0 < inner_radius < outer_radius")
    alphas = [tuple(int(a) for a in alpha) for alpha in alphas]
    n = len(alphas)
    if any(len(a) != n for a in alphas):
        raise DimensionMismatch("need n exponent vectors of dimension n")
    LT = [[Fraction(alphas[j][i]) for i in range(n)] for j in range(n)]  # rows = alphas? no: L^T rows
    # L maps e_j -> alpha_j, so (Log F)(x) = L^T x with (L^T)_{ji} = alpha_j[i].
    if det_rational(LT) == 0:
        raise PreconditionViolated("singular exponent matrix")
    inv = _invert_rational(LT)
    a, b = math.log(inner_radius), math.log(outer_radius)
    lo = [math.inf] * n
    hi = [-math.inf] * n
    for corner in range(1 << n):
        y = [b if corner >> j & 1 else a for j in range(n)]
        x = [sum(float(inv[i][j]) * y[j] for j in range(n)) for i in range(n)]
        for i in range(n):
            lo[i] = min(lo[i], x[i])
            hi[i] = max(hi[i], x[i])
    return tuple((lo[i], hi[i]) for i in range(n))


def _invert_rational(M):
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


def verify_lattice_map(S: RationalPolytope, lm: LatticeMap) -> dict:
    """Exact invariant checks for a LatticeMap; returns a report dict."""
    cols = lm.columns()
    report = {}
    if cols:
        report["minor_gcd"] = maximal_minor_gcd(cols)
        span_rows = [clear_denominators(v) for v in S.vertices if any(v)]
        in_span = all(
            rational_rank(span_rows + [col]) == rational_rank(span_rows)
            for col in cols)
        report["columns_in_span"] = in_span
    else:
        report["minor_gcd"] = None
        report["columns_in_span"] = True
    kcols = lm.kernel_columns()
    report["kernel_orthogonal"] = all(
        fdot(fvec(v), k) == 0 for v in S.vertices for k in kcols)
    report["T_nonnegative"] = all(c >= 0 for t in lm.T_vertices for c in t)
    mapped = []
    for tv in lm.T_vertices:
        img = tuple(sum(Fraction(lm.matrix_L[i][j]) * tv[j] for j in range(lm.ell))
                    for i in range(lm.dim))
        mapped.append(img)
    report["T_maps_to_vertices"] = set(mapped) == set(S.vertices)
    return report
