import math
from fractions import Fraction as F

import pytest

from cone_hull.errors import (
    DimensionMismatch,
    NoFullSupportPiece,
    PreconditionViolated,
)
from cone_hull.extremal import (
    ReinhardtBody,
    eval_vsk,
    hull_membership,
    hull_sampler,
    meets_open_orthant,
    siciak_monomial,
    support_A,
    vsk_on_axes,
)
from cone_hull.polytope import RationalPolytope, support
from conftest import (
    oracle_vsk,
    rand_frac,
    random_log_vertices,
    random_polytope,
)

SIGMA = RationalPolytope(2, [(0, 0), (1, 0), (0, 1)])
TRI = RationalPolytope(2, [(0, 0), (1, 0), (1, 1)])
DIAG = RationalPolytope(2, [(0, 0), (1, 1)])
SHALF = RationalPolytope(2, [(0, 0), (1, F(1, 2))])
T2 = ReinhardtBody.torus(2)


# ---------------------------------------------------------------------------
# ReinhardtBody and support_A


def test_body_validation():
    with pytest.raises(DimensionMismatch):
        ReinhardtBody(2, [((0, 5), [(0, 0)])])
    with pytest.raises(DimensionMismatch):
        ReinhardtBody(2, [((0, 1), [(0,)])])
    with pytest.raises(PreconditionViolated):
        ReinhardtBody(2, [])


def test_support_A_examples():
    assert support_A(T2, (3, -7)) == 0
    K = ReinhardtBody.from_log_vertices(2, [(0, 0), (1, 0)])
    assert support_A(K, (2, 1)) == 2
    K2 = ReinhardtBody.from_log_vertices(2, [(-1, -1), (1, 1)])
    assert support_A(K2, (1, -1)) == 0


def test_support_A_needs_full_support_piece():
    axis_only = ReinhardtBody(2, [((0,), [(0,)])])
    with pytest.raises(NoFullSupportPiece):
        support_A(axis_only, (1, 1))


def test_meets_open_orthant():
    assert meets_open_orthant(SIGMA)
    assert meets_open_orthant(DIAG)
    assert not meets_open_orthant(RationalPolytope(2, [(0, 0), (1, 0)]))


# ---------------------------------------------------------------------------
# eval_vsk


def test_torus_identity_exact():
    for x in [(1, -1), (F(3, 7), F(-2, 5)), (0, 0), (-4, 9)]:
        v = eval_vsk(SIGMA, T2, x)
        assert v.value == support(SIGMA, x)
        assert isinstance(v.value, F)


def test_eval_vsk_shifted_example():
    K = ReinhardtBody.from_log_vertices(2, [(0, 0), (1, 0)])
    v = eval_vsk(SIGMA, K, (2, 0))
    assert v.value == 1
    assert v.maximizer_s == (1, 0)


def test_eval_vsk_zero_in_lower_left():
    v = eval_vsk(SIGMA, T2, (-1, -2))
    assert v.value == 0
    assert v.maximizer_s == (0, 0)


def test_eval_vsk_value_structure():
    K = ReinhardtBody.from_log_vertices(2, [(0, 0), (1, 0), (0, 1)])
    x = (F(5, 3), F(-1, 2))
    v = eval_vsk(SIGMA, K, x)
    phi = support_A(K, v.maximizer_s)
    assert v.value == sum(s * xi for s, xi in zip(v.maximizer_s, x)) - phi
    # the reported active vertex attains phi_A at the maximizer
    assert sum(a * s for a, s in zip(v.active_a, v.maximizer_s)) == phi
    # nonnegative on the log image of K itself
    for a in ((0, 0), (1, 0), (0, 1), (F(1, 2), F(1, 2))):
        assert eval_vsk(SIGMA, K, a).value >= 0


def test_eval_vsk_precondition():
    S_axis = RationalPolytope(2, [(0, 0), (1, 0)])   # misses the open orthant
    K_axis = ReinhardtBody(2, [((0, 1), [(0, 0)]), ((0,), [(0,)])])
    with pytest.raises(PreconditionViolated):
        eval_vsk(S_axis, K_axis, (1, 1))
    # full-support-only K lifts the restriction
    assert eval_vsk(S_axis, T2, (1, 1)).value == 1


def test_eval_vsk_matches_bruteforce_oracle(rng):
    for _ in range(30):
        S = random_polytope(rng, 2, k=3)
        A = random_log_vertices(rng, 2, k=rng.randint(1, 3))
        K = ReinhardtBody.from_log_vertices(2, A)
        x = (rand_frac(rng, -3, 3), rand_frac(rng, -3, 3))
        v = eval_vsk(S, K, x)
        assert v.value == oracle_vsk(S, A, x)


def test_eval_vsk_float_path_close_to_exact(rng):
    for _ in range(10):
        S = random_polytope(rng, 2, k=3)
        A = random_log_vertices(rng, 2, k=2)
        K = ReinhardtBody.from_log_vertices(2, A)
        x = (rand_frac(rng, -2, 2), rand_frac(rng, -2, 2))
        exact = eval_vsk(S, K, x).value
        Kf = ReinhardtBody.from_log_vertices(2, [[float(c) for c in a] for a in A])
        fast = eval_vsk(S, Kf, [float(c) for c in x]).value
        assert abs(float(exact) - fast) < 1e-9


# ---------------------------------------------------------------------------
# hull membership


def test_hull_membership_inside_example():
    cert = hull_membership(SIGMA, T2, (-1, -2))
    assert cert.inside
    a, t = cert.decomposition
    assert a == (0, 0) and t == (1, 2)


def test_hull_membership_outside_example():
    cert = hull_membership(SIGMA, T2, (F(1, 10), -5))
    assert not cert.inside
    xi = cert.separator
    x = (F(1, 10), F(-5))
    assert sum(a * b for a, b in zip(xi, x)) > support_A(T2, xi)


def test_hull_membership_halfplane_example():
    cert = hull_membership(DIAG, T2, (3, -4))
    assert cert.inside
    a, t = cert.decomposition
    assert tuple(ai - ti for ai, ti in zip(a, t)) == (3, -4)
    # t in the dual cone: <t, (1,1)> >= 0
    assert t[0] + t[1] >= 0


def test_hull_membership_sign_consistency(rng):
    for _ in range(4):
        S = random_polytope(rng, 2, k=3)
        A = random_log_vertices(rng, 2, k=2)
        K = ReinhardtBody.from_log_vertices(2, A)
        for _ in range(40):
            x = (rand_frac(rng, -3, 3), rand_frac(rng, -3, 3))
            value = eval_vsk(S, K, x).value
            cert = hull_membership(S, K, x)
            assert cert.inside == (value <= 0)
            if cert.inside:
                a, t = cert.decomposition
                assert tuple(ai - ti for ai, ti in zip(a, t)) == tuple(F(c) for c in x)
            else:
                xi = cert.separator
                assert sum(a * b for a, b in zip(xi, x)) > support_A(K, xi)


# ---------------------------------------------------------------------------
# siciak monomial approximants


def test_siciak_examples():
    assert siciak_monomial(SIGMA, T2, 1, (1, -1)) == pytest.approx(1.0)
    assert siciak_monomial(SHALF, T2, 1, (1, 1)) == pytest.approx(0.0)
    assert siciak_monomial(SHALF, T2, 2, (1, 1)) == pytest.approx(1.5)
    assert float(eval_vsk(SHALF, T2, (1, 1)).value) == pytest.approx(1.5)


def test_siciak_below_vsk_and_doubling_monotone(rng):
    for _ in range(6):
        S = random_polytope(rng, 2, k=3)
        A = random_log_vertices(rng, 2, k=2)
        K = ReinhardtBody.from_log_vertices(2, A)
        x = (rand_frac(rng, -2, 2), rand_frac(rng, -2, 2))
        vs = float(eval_vsk(S, K, x).value)
        prev = -math.inf
        for m in (5, 10, 20, 40):
            val = siciak_monomial(S, K, m, x)
            assert val <= vs + 1e-9
            assert val >= prev - 1e-12
            prev = val


def test_siciak_rejects_bad_m():
    with pytest.raises(PreconditionViolated):
        siciak_monomial(SIGMA, T2, 0, (0, 0))


# ---------------------------------------------------------------------------
# axis recursion


def test_axes_collapsed_section_is_zero():
    for x2 in (-3, 0, 2, 17):
        assert vsk_on_axes(TRI, T2, [1], [x2]).value == 0


def test_axes_interval_section():
    v = vsk_on_axes(TRI, T2, [0], [2])
    assert v.value == 2  # sup of 2s over [0,1]


def test_axes_full_projection_identity(rng):
    for _ in range(10):
        S = random_polytope(rng, 2, k=3)
        A = random_log_vertices(rng, 2, k=2)
        K = ReinhardtBody.from_log_vertices(2, A)
        x = (rand_frac(rng, -2, 2), rand_frac(rng, -2, 2))
        assert vsk_on_axes(S, K, [0, 1], x).value == eval_vsk(S, K, x).value


def test_axes_consistency_with_direct_lower_dim(rng):
    # a piece supported on a subtorus projects to the 1-D world exactly
    for _ in range(50):
        S = random_polytope(rng, 2, k=3)
        a_vals = [rand_frac(rng, -2, 2) for _ in range(2)]
        K = ReinhardtBody(2, [((0, 1), [(a_vals[0], a_vals[1])])])
        J = [rng.randint(0, 1)]
        x1 = rand_frac(rng, -2, 2)
        via_axes = vsk_on_axes(S, K, J, [x1]).value
        from cone_hull.polytope import section
        SJ = section(S, J)
        K1 = ReinhardtBody.from_log_vertices(1, [(a_vals[J[0]],)])
        if all(not any(v) for v in SJ.vertices):
            assert via_axes == 0
        else:
            direct = eval_vsk(SJ, K1, [x1]).value
            assert via_axes == direct


# ---------------------------------------------------------------------------
# sampler


def test_sampler_counts_and_determinism():
    a = hull_sampler(SIGMA, T2, 2.0, 12, seed=7)
    b = hull_sampler(SIGMA, T2, 2.0, 12, seed=7)
    assert a == b and len(a) == 12
    c = hull_sampler(SIGMA, T2, 2.0, 12, seed=8)
    assert a != c


def test_sampler_depth_zero_stays_in_log_polytope():
    K = ReinhardtBody.from_log_vertices(2, [(0, 0), (1, 0)])
    for p in hull_sampler(SIGMA, K, 0.0, 10, seed=1):
        assert -1e-12 <= p[0] <= 1.0 + 1e-12
        assert abs(p[1]) <= 1e-12


def test_sampler_empty():
    assert hull_sampler(SIGMA, T2, 1.0, 0) == []


def test_sampler_members_verify(rng):
    for _ in range(4):
        S = random_polytope(rng, 2, k=3)
        A = random_log_vertices(rng, 2, k=2)
        K = ReinhardtBody.from_log_vertices(2, A)
        for p in hull_sampler(S, K, 3.0, 15, seed=2):
            x = [F(v).limit_denominator(10**8) for v in p]
            assert eval_vsk(S, K, x).value <= F(1, 10**6)


def test_sampler_monte_carlo_directions_in_4d():
    # n = 4 has no exact dual rays; directions come from seeded rejection
    S4 = RationalPolytope(4, [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0),
                              (0, 0, 1, 0), (0, 0, 0, 1)])
    K4 = ReinhardtBody.torus(4)
    pts = hull_sampler(S4, K4, 2.0, 10, seed=4)
    assert len(pts) == 10
    assert pts == hull_sampler(S4, K4, 2.0, 10, seed=4)
    for p in pts:
        x = [F(v).limit_denominator(10**8) for v in p]
        assert eval_vsk(S4, K4, x).value <= F(1, 10**6)
