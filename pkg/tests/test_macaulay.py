import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from tropsatz.core import INF, exp_sub, exponents_upto
from tropsatz.macaulay import (
    MonomialIndex, build_macaulay, check_macaulay_solution, degree_bound, embeds_rows, root_vector,
    system_bound,
)
from tropsatz.nullsatz import macaulay_solution
from tropsatz.oracle import Constraint, fm_feasible, oracle_solve, random_system
from tropsatz.poly import is_root_system

from conftest import mp, tp

INTRO = [tp(1, [(0, (0,)), (0, (1,))]), tp(1, [(0, (0,)), (1, (1,))])]


def test_degree_bounds():
    assert degree_bound("R", 1, 2, [1, 1]) == 6
    assert degree_bound("R", 2, 3, [1, 2, 1]) == 16
    assert degree_bound("Rinf", 1, 1, [1]) == 1152
    assert system_bound(INTRO, "R") == 6
    with pytest.raises(ValueError):
        degree_bound("R", 1, 0, [])


def test_index():
    idx = MonomialIndex(2, 3)
    assert len(idx) == comb(5, 2) and idx.index((0, 0)) == idx.const_col == 0
    assert sorted(idx.index(e) for e in idx.exps) == list(range(len(idx)))
    with pytest.raises(ValueError):
        MonomialIndex(1, -1)


def test_intro_matrix():
    M = build_macaulay(INTRO, 2)
    assert M.row_labels == [(0, (0,)), (0, (1,)), (1, (0,)), (1, (1,))]
    assert M.matrix().to_dense() == [[0, 0, INF], [INF, 0, 0], [0, 1, INF], [INF, 0, 1]]


def test_intro_unsolvable_at_bound_by_fourier_motzkin():
    # every row has two finite entries, so "min attained twice" is y_J + a = y_J' + b
    M = build_macaulay(INTRO, 6)
    cons = []
    for row in M.left:
        (j, a), (k, b) = row.items()
        coeffs = [0] * M.shape[1]
        coeffs[j], coeffs[k] = 1, -1
        cons.append(Constraint(coeffs, "==", b - a))
    assert fm_feasible(cons, M.shape[1]) is None
    assert macaulay_solution(M) is None


def test_single_polynomial_all_zero_solution():
    M = build_macaulay([tp(1, [(0, (0,)), (0, (1,))])], 3)
    assert check_macaulay_solution(M, [0, 0, 0, 0])


def test_minplus_matrices():
    M = build_macaulay([mp(1, [(0, (1,))], [(1, (0,))])], 1)
    assert M.system().lhs.to_dense() == [[INF, 0]] and M.system().rhs.to_dense() == [[1, INF]]
    # columns are (1, x): y_x = 1 with y_1 = 0 gives 1 = 1
    assert check_macaulay_solution(M, [0, 1]) and not check_macaulay_solution(M, [1, 0])
    F = [mp(1, [(0, (0,))], [(0, (1,))]), mp(1, [(0, (0,))], [(1, (1,))])]
    assert macaulay_solution(build_macaulay(F, system_bound(F, "R"))) is None
    # degree above N leaves a polynomial without rows
    M = build_macaulay([mp(1, [(0, (2,))], [(0, (0,))])], 1)
    assert M.shape == (0, 2)
    with pytest.raises(TypeError):
        build_macaulay([INTRO[0], F[0]], 2)


def test_entries_are_shifted_coefficients():
    rng = random.Random(4)
    for _ in range(30):
        F = random_system(rng, 2, 2, 2)
        N = 4
        M = build_macaulay(F, N)
        assert M.shape[0] == sum(comb(N - f.degree + 2, 2) for f in F)
        for (j, J), row in zip(M.row_labels, M.left):
            for e in exponents_upto(2, N):
                shifted = exp_sub(e, J)
                want = F[j].terms.get(shifted, INF) if shifted is not None else INF
                assert row.get(M.index.index(e), INF) == want


@st.composite
def system_with_root(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    minplus = draw(st.booleans())
    while True:
        F = random_system(rng, rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2), minplus)
        a = oracle_solve(F, "R")
        if a is not None:
            return F, a, draw(st.integers(0, 5))


@given(system_with_root())
def test_easy_direction(case):
    F, a, N = case
    assert is_root_system(F, a)
    M = build_macaulay(F, max(N, max(p.degree for p in F)))
    assert check_macaulay_solution(M, root_vector(M.index, a), nonhomogeneous=True)


def test_monotone_in_degree():
    rng = random.Random(6)
    for _ in range(40):
        F = random_system(rng, rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 2), rng.random() < 0.5)
        d = max(p.degree for p in F)
        small, big = build_macaulay(F, d), build_macaulay(F, d + 2)
        assert embeds_rows(small, big) and not embeds_rows(big, small)
        if macaulay_solution(small) is None:
            assert macaulay_solution(big) is None
        y = macaulay_solution(big)
        if y is not None:
            # restricting a solution of the bigger system solves the smaller one
            assert check_macaulay_solution(small, [y[e] for e in small.index.exps])
