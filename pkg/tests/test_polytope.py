import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cone_hull.errors import (
    BudgetExceeded,
    DimensionMismatch,
    EmptyInterior,
    PreconditionViolated,
)
from cone_hull.polytope import (
    RationalPolytope,
    contains,
    distance_growth,
    dual_cone,
    enumerate_exponents,
    lattice_distance,
    minimal_scaling,
    nearest_outside,
    refine,
    section,
    support,
)
from conftest import oracle_lattice_points, oracle_membership, random_polytope

SIGMA = RationalPolytope(2, [(0, 0), (1, 0), (0, 1)])
TRI = RationalPolytope(2, [(0, 0), (1, 0), (1, 1)])
DIAG = RationalPolytope(2, [(0, 0), (1, 1)])


# ---------------------------------------------------------------------------
# construction invariants


def test_irredundant_vertices():
    S = RationalPolytope(2, [(0, 0), (1, 0), (0, 1), (F(1, 2), F(1, 2)), (F(1, 4), F(1, 4))])
    assert S.vertices == SIGMA.vertices


def test_origin_membership_required():
    with pytest.raises(PreconditionViolated):
        RationalPolytope(2, [(1, 0), (2, 0), (1, 1)])
    # origin as a convex combination (not listed) is fine
    S = RationalPolytope(1, [(0,), (2,)])
    assert S.vertices == ((F(0),), (F(2),))


def test_nonnegative_coordinates_required():
    with pytest.raises(PreconditionViolated):
        RationalPolytope(2, [(0, 0), (-1, 1)])


def test_dimension_checked():
    with pytest.raises(DimensionMismatch):
        RationalPolytope(2, [(0, 0, 0)])


# ---------------------------------------------------------------------------
# support


def test_support_examples():
    assert support(SIGMA, (3, -1)) == 3
    assert support(SIGMA, (0, 0)) == 0
    assert support(TRI, (-1, 2)) == 1


def test_support_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        support(SIGMA, (1, 2, 3))


rational = st.fractions(min_value=-4, max_value=4, max_denominator=8)


@settings(max_examples=60, deadline=None)
@given(xi=st.tuples(rational, rational), lam=st.fractions(min_value=0, max_value=5, max_denominator=6))
def test_support_positively_homogeneous(xi, lam):
    assert support(TRI, tuple(lam * v for v in xi)) == lam * support(TRI, xi)


@settings(max_examples=60, deadline=None)
@given(xi=st.tuples(rational, rational), eta=st.tuples(rational, rational))
def test_support_subadditive(xi, eta):
    both = tuple(a + b for a, b in zip(xi, eta))
    assert support(TRI, both) <= support(TRI, xi) + support(TRI, eta)


# ---------------------------------------------------------------------------
# contains


def test_contains_inside_certificate():
    inside, weights = contains(SIGMA, (F(1, 2), F(1, 4)))
    assert inside
    assert sum(weights) == 1 and all(w >= 0 for w in weights)
    rebuilt = tuple(sum(w * v[j] for w, v in zip(weights, SIGMA.vertices))
                    for j in range(2))
    assert rebuilt == (F(1, 2), F(1, 4))


def test_contains_separator_certificate():
    inside, xi = contains(SIGMA, (1, 1))
    assert not inside
    assert sum(a * b for a, b in zip(xi, (1, 1))) > support(SIGMA, xi)


def test_contains_derived_example():
    # oracle: float LP feasibility on an independent route
    x = (F(1, 2), F(3, 4))
    assert oracle_membership(TRI, x) is False
    inside, xi = contains(TRI, x)
    assert not inside
    assert sum(a * b for a, b in zip(xi, x)) > support(TRI, xi)


def test_contains_agrees_with_oracle_randomized(rng):
    for _ in range(25):
        S = random_polytope(rng, 2)
        x = (F(rng.randint(0, 8), 4), F(rng.randint(0, 8), 4))
        inside, cert = contains(S, x)
        assert inside == oracle_membership(S, x)
        if inside:
            rebuilt = tuple(sum(w * v[j] for w, v in zip(cert, S.vertices))
                            for j in range(2))
            assert rebuilt == x


# ---------------------------------------------------------------------------
# refine


def test_refine_examples():
    S = RationalPolytope(2, [(0, 0), (1, F(1, 2))])
    assert refine(S, 1).vertices == ((F(0), F(0)),)
    assert refine(S, 2) == S
    for m in (1, 2, 3, 5):
        assert refine(SIGMA, m) == SIGMA


def test_refine_subset_and_idempotent(rng):
    for _ in range(10):
        S = random_polytope(rng, 2)
        m = rng.choice((1, 2, 3, 4))
        Sm = refine(S, m)
        for v in Sm.vertices:
            assert contains(S, v)[0]
        assert refine(Sm, m) == Sm


def test_refine_preserves_exponents(rng):
    # defining property: the degree-m lattice points of S and S_m agree
    for _ in range(8):
        S = random_polytope(rng, 2)
        m = rng.choice((1, 2, 3))
        assert enumerate_exponents(refine(S, m), m).points == \
            enumerate_exponents(S, m).points


# ---------------------------------------------------------------------------
# enumerate_exponents


def test_enumerate_examples():
    E = enumerate_exponents(SIGMA, 2)
    assert len(E) == 6
    assert set(E.points) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}
    assert enumerate_exponents(TRI, 1).points == ((0, 0), (1, 0), (1, 1))
    assert set(enumerate_exponents(TRI, 2).points) == \
        {(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)}


def test_enumerate_matches_lp_oracle(rng):
    for _ in range(6):
        S = random_polytope(rng, 2, k=3)
        m = rng.choice((1, 2, 3))
        assert list(enumerate_exponents(S, m).points) == oracle_lattice_points(S, m)


def test_enumerate_lowdim_polytope():
    E = enumerate_exponents(DIAG, 3)
    assert E.points == ((0, 0), (1, 1), (2, 2), (3, 3))


def test_enumerate_budget_guard():
    big = RationalPolytope(2, [(0, 0), (10**4, 0), (0, 10**4)])
    with pytest.raises(BudgetExceeded):
        enumerate_exponents(big, 10**4)


def test_enumerate_rejects_bad_m():
    with pytest.raises(PreconditionViolated):
        enumerate_exponents(SIGMA, 0)


# ---------------------------------------------------------------------------
# lattice_distance


def test_unit_square_distance():
    P = RationalPolytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    d, bound, ok = lattice_distance(P)
    assert d == 1.0
    assert abs(bound - 1 / math.sqrt(2)) < 1e-15
    assert ok


def test_two_sigma_distance():
    P = RationalPolytope(2, [(0, 0), (2, 0), (0, 2)])
    d, bound, ok = lattice_distance(P)
    assert abs(d - 1 / math.sqrt(2)) < 1e-15
    assert abs(bound - 1 / (math.sqrt(2) * 2)) < 1e-15
    assert ok


def test_distance_rejects_empty_interior():
    with pytest.raises(EmptyInterior):
        lattice_distance(RationalPolytope(2, [(0, 0), (2, 2)]))


def test_distance_rejects_nonintegral():
    with pytest.raises(PreconditionViolated):
        lattice_distance(RationalPolytope(2, [(0, 0), (1, F(1, 2)), (1, 0)]))


def test_nearest_outside_variational_certificate(rng):
    # the projection certificate <p - q, v - q> <= 0 proves exact optimality
    for _ in range(12):
        pts = [(0, 0)] + [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(5)]
        try:
            P = RationalPolytope(2, pts)
        except PreconditionViolated:
            continue
        if P.span_rank < 2:
            continue
        d2, p, q = nearest_outside(P)
        assert d2 == sum((a - b) ** 2 for a, b in zip(p, q))
        for v in P.vertices:
            assert sum((a - b) * (c - b) for a, b, c in zip(p, q, v)) <= 0


def test_distance_l1_option():
    P = RationalPolytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    d1, _, ok = lattice_distance(P, norm="l1")
    assert d1 == 1.0 and ok


# ---------------------------------------------------------------------------
# distance_growth


def test_distance_growth_simplex_constant():
    rows = distance_growth(SIGMA, 6)
    for m, d, droot in rows:
        assert abs(d - 1 / math.sqrt(2)) < 1e-12
        assert abs(droot - (1 / math.sqrt(2)) ** (1 / m)) < 1e-12


def test_distance_growth_first_entry_at_most_one(rng):
    for _ in range(4):
        S = random_polytope(rng, 2)
        rows = distance_growth(S, 1)
        assert rows[0][1] <= 1.0 + 1e-12


def test_distance_growth_degenerate_refinement_handled():
    # S_1 of this S is a segment; the scan must still produce d_1
    S = RationalPolytope(2, [(0, 0), (1, 0), (1, F(1, 2))])
    rows = distance_growth(S, 2)
    assert rows[0][1] == 1.0
    bound = 1 / (math.sqrt(2) * 2 * float(support(S, (1, 1))))
    assert rows[1][1] >= bound


def test_distance_growth_needs_full_dimension():
    with pytest.raises(EmptyInterior):
        distance_growth(DIAG, 3)


# ---------------------------------------------------------------------------
# dual_cone


def test_dual_cone_simplex_self_dual():
    rep = dual_cone(SIGMA)
    assert set(rep.dual_generators) == {(1, 0), (0, 1)}
    assert set(rep.dual_halfspaces) == {(1, 0), (0, 1)}


def test_dual_cone_tri_example():
    rep = dual_cone(TRI)
    assert set(rep.dual_generators) == {(1, -1), (0, 1)}
    for d in rep.dual_generators:
        for g in rep.generators:
            assert sum(a * b for a, b in zip(d, g)) >= 0


def test_dual_cone_of_origin_is_everything():
    rep = dual_cone(RationalPolytope(2, [(0, 0)]))
    assert set(rep.dual_generators) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_dual_cone_pairing_nonnegative(rng):
    for _ in range(6):
        S = random_polytope(rng, 2)
        rep = dual_cone(S)
        # 1000 sampled dual points (nonnegative combos of the dual rays)
        samples = []
        for i in range(1000):
            w = [(i * 7 + k * 13) % 5 for k in range(len(rep.dual_generators))]
            samples.append(tuple(sum(wk * d[j] for wk, d in zip(w, rep.dual_generators))
                                 for j in range(2)))
        for xpt in samples:
            for v in S.vertices:
                assert sum(F(a) * b for a, b in zip(xpt, v)) >= 0


def test_dual_cone_rays_refused_beyond_3d():
    S4 = RationalPolytope(4, [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0),
                              (0, 0, 1, 0), (0, 0, 0, 1)])
    rep = dual_cone(S4)
    assert rep.dual_generators is None
    assert rep.dual_halfspaces  # half-space form still present


# ---------------------------------------------------------------------------
# section


def test_section_examples():
    assert section(TRI, [0]).vertices == ((F(0),), (F(1),))
    assert section(TRI, [1]).vertices == ((F(0),),)
    assert section(SIGMA, [0, 1]) == SIGMA


def test_section_rejects_bad_index_sets():
    with pytest.raises(DimensionMismatch):
        section(TRI, [])
    with pytest.raises(DimensionMismatch):
        section(TRI, [2])


def test_dual_cone_3d_extreme_rays():
    # cone{(1,0,0),(1,1,0),(1,1,1)}: dual rays solved by hand from the
    # three active-pair kernels
    S = RationalPolytope(3, [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)])
    rep = dual_cone(S)
    assert set(rep.dual_generators) == {(0, 0, 1), (0, 1, -1), (1, -1, 0)}
    # bidual: each generator of the cone pairs nonnegatively with every ray
    for g in rep.generators:
        for d in rep.dual_generators:
            assert sum(a * b for a, b in zip(g, d)) >= 0


def test_section_support_identity(rng):
    # supporting function of the section agrees with the restricted support
    for _ in range(10):
        S = random_polytope(rng, 3, k=4, full_dim=False)
        J = sorted(rng.sample(range(3), rng.randint(1, 2)))
        SJ = section(S, J)
        xi = tuple(F(rng.randint(-4, 4), 2) for _ in J)
        expected = max(
            (sum(xi[t] * v[J[t]] for t in range(len(J)))
             for v in S.vertices if all(v[j] == 0 for j in range(3) if j not in J)),
        )
        assert support(SJ, xi) == expected


# ---------------------------------------------------------------------------
# minimal scaling


def test_minimal_scaling_examples():
    assert minimal_scaling(TRI, (2, 1)) == 2
    assert minimal_scaling(DIAG, (3, 3)) == 3
    assert minimal_scaling(DIAG, (1, 0)) is None
    assert minimal_scaling(SIGMA, (0, 0)) == 0
