from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from reorilat.lp import linprog, nullspace, rank, solve


def test_simple_max():
    # max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0
    res = linprog([1, 1], a_ub=[[1, 2], [3, 1]], b_ub=[4, 6], free=False)
    assert res.status == "optimal"
    assert res.value == Fraction(14, 5)


def test_infeasible_and_unbounded():
    assert linprog([0], a_ub=[[1], [-1]], b_ub=[-1, -1]).status == "infeasible"
    assert linprog([1], a_ub=[[-1]], b_ub=[0]).status == "unbounded"


def test_equalities_and_free_variables():
    res = linprog([1, 0], a_eq=[[1, 1]], b_eq=[-3], a_ub=[[1, 0]], b_ub=[-1])
    assert res.status == "optimal" and res.value == -1 and res.x == [-1, -2]


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in rows)
    assert solve([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


small = st.integers(-4, 4)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=5), st.tuples(small, small))
def test_two_variable_lp_matches_vertex_enumeration(rows, c):
    """Box-bounded 2D LPs against brute force over all pairs of tight constraints."""
    cons = [((a, b), r) for a, b, r in rows] + [((1, 0), 5), ((-1, 0), 5), ((0, 1), 5), ((0, -1), 5)]
    res = linprog(list(c), a_ub=[list(a) for a, _ in cons], b_ub=[r for _, r in cons])
    best = None
    for (a1, r1), (a2, r2) in combinations(cons, 2):
        x = solve([list(a1), list(a2)], [r1, r2])
        if x is None or rank([list(a1), list(a2)]) < 2:
            continue
        if all(a[0] * x[0] + a[1] * x[1] <= r for a, r in cons):
            val = c[0] * x[0] + c[1] * x[1]
            best = val if best is None else max(best, val)
    if best is None:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal" and res.value == best
