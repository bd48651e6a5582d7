import random
from fractions import Fraction as F

import pytest
from scipy.optimize import linprog

from cone_hull._exactlp import LPStatus, lp_solve


def test_bounded_maximization():
    res = lp_solve([1, 1], A_ub=[[1, 0], [0, 1], [1, 1]], b_ub=[2, 3, 4], maximize=True)
    assert res.status is LPStatus.OPTIMAL
    assert res.objective == 4


def test_equality_feasibility_weights():
    # x = (1/2, 1/4) as a convex combination of simplex vertices
    res = lp_solve([0, 0, 0],
                   A_eq=[[0, 1, 0], [0, 0, 1], [1, 1, 1]],
                   b_eq=[F(1, 2), F(1, 4), 1])
    assert res.status is LPStatus.OPTIMAL
    assert sum(res.x) == 1
    assert all(v >= 0 for v in res.x)


def test_infeasible_farkas_certificate():
    # (1,1) is not in the unit simplex; Farkas separates exactly
    verts = [(0, 0), (1, 0), (0, 1)]
    res = lp_solve([0, 0, 0],
                   A_eq=[[0, 1, 0], [0, 0, 1], [1, 1, 1]],
                   b_eq=[1, 1, 1])
    assert res.status is LPStatus.INFEASIBLE
    xi1, xi2, c = res.farkas
    for v in verts:
        assert xi1 * v[0] + xi2 * v[1] + c <= 0
    assert xi1 + xi2 + c > 0


def test_unbounded():
    res = lp_solve([1], free=[0], maximize=True)
    assert res.status is LPStatus.UNBOUNDED


def test_free_variables_roundtrip():
    # min u subject to u >= 3, u free
    res = lp_solve([1], A_ub=[[-1]], b_ub=[-3], free=[0])
    assert res.status is LPStatus.OPTIMAL
    assert res.x == (3,)


def test_degenerate_redundant_rows():
    # duplicated constraint rows must not break phase 2
    res = lp_solve([1, 1], A_eq=[[1, 1], [1, 1]], b_eq=[1, 1])
    assert res.status is LPStatus.OPTIMAL
    assert res.objective == 1


@pytest.mark.parametrize("seed", range(40))
def test_random_against_scipy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    m_ub = rng.randint(1, 4)
    c = [F(rng.randint(-4, 4)) for _ in range(n)]
    A_ub = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m_ub)]
    b_ub = [F(rng.randint(-1, 5)) for _ in range(m_ub)]
    res = lp_solve(c, A_ub=A_ub, b_ub=b_ub)
    ref = linprog([float(v) for v in c],
                  A_ub=[[float(v) for v in row] for row in A_ub],
                  b_ub=[float(v) for v in b_ub],
                  bounds=[(0, None)] * n, method="highs")
    if res.status is LPStatus.OPTIMAL:
        assert ref.status == 0
        assert abs(float(res.objective) - ref.fun) < 1e-7
        # exact primal feasibility
        for row, rhs in zip(A_ub, b_ub):
            assert sum(a * v for a, v in zip(row, res.x)) <= rhs
        assert all(v >= 0 for v in res.x)
    elif res.status is LPStatus.INFEASIBLE:
        assert ref.status == 2
        # exact Farkas verification: y.A <= 0 columnwise, y <= 0, y.b > 0
        y = res.farkas
        assert all(v <= 0 for v in y)
        for j in range(n):
            assert sum(y[i] * A_ub[i][j] for i in range(m_ub)) <= 0
        assert sum(y[i] * b_ub[i] for i in range(m_ub)) > 0
    else:
        # HiGHS presolve may report "infeasible" for primal-unbounded models;
        # confirm feasibility ourselves, which pins the status to unbounded.
        feas = lp_solve([F(0)] * n, A_ub=A_ub, b_ub=b_ub)
        assert feas.status is LPStatus.OPTIMAL
        assert ref.status in (2, 3)
