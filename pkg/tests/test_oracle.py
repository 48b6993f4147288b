import itertools
import random
from fractions import Fraction

import pytest

from tropsatz.core import INF
from tropsatz.game import build_game
from tropsatz.linsys import MinPlusSystem
from tropsatz.macaulay import build_macaulay, check_macaulay_solution
from tropsatz.oracle import (
    Constraint, candidate_vector, fm_feasible, generate_fixture, lmp_weight, max_neighbour_gap,
    oracle_game, oracle_solve, stripes_psi,
)
from tropsatz.poly import is_root_system

from conftest import mat, tp


def test_fm_examples():
    assert fm_feasible([Constraint((1,), ">=", 0), Constraint((1,), "<=", 0)]) == [0]
    assert fm_feasible([Constraint((1,), ">", 0), Constraint((1,), "<", 0)]) is None
    assert fm_feasible([Constraint((1, 1), "==", 1), Constraint((1, 0), ">=", 0),
                        Constraint((0, 1), ">=", 2)]) is None
    with pytest.raises(ValueError):
        Constraint((1,), "!=", 0)


def _holds(c, x):
    v = sum(a * b for a, b in zip(c.coeffs, x))
    return {"==": v == c.rhs, "<=": v <= c.rhs, "<": v < c.rhs, ">=": v >= c.rhs, ">": v > c.rhs}[c.op]


def test_fm_against_grid_search():
    rng = random.Random(13)
    grid = [Fraction(k, 4) for k in range(-16, 17)]
    for _ in range(150):
        cons = [Constraint((rng.randint(-2, 2), rng.randint(-2, 2)), rng.choice(["<=", "<", ">=", ">", "=="]),
                           rng.randint(-2, 2)) for _ in range(rng.randint(1, 4))]
        x = fm_feasible(cons, 2)
        if x is not None:
            assert all(_holds(c, x) for c in cons)
        # a grid witness forces a witness; the converse can fail for thin sets
        hit = any(all(_holds(c, p) for c in cons) for p in itertools.product(grid, repeat=2))
        if hit:
            assert x is not None


def test_oracle_solve_examples():
    intro = generate_fixture("intro")
    assert oracle_solve(intro.polys, "R") is None
    a = oracle_solve([tp(1, [(0, (0,)), (0, (1,))])], "R")
    assert a == [0]
    assert oracle_solve([tp(1, [(0, (1,))])], "Rinf") == [INF]
    assert oracle_solve([tp(1, [(0, (1,))])], "R") is None


def test_oracle_game_examples():
    G = lambda A, B: build_game(MinPlusSystem(mat(A), mat(B)))
    assert oracle_game(G([[0]], [[1]]))[("c", 0)] == "column"
    assert oracle_game(G([[1]], [[0]]))[("c", 0)] == "row"
    assert oracle_game(G([[0]], [[0]]))[("c", 0)] == "draw"


def test_lmp_fixture():
    fx = generate_fixture("lmp", {"n": 2, "d": 2})
    assert [str(p) for p in fx.polys] == [str(tp(2, [(0, (0, 0)), (0, (1, 0))])),
                                         str(tp(2, [(0, (2, 0)), (0, (0, 1))])),
                                         str(tp(2, [(0, (0, 0)), (1, (0, 1))]))]
    M = build_macaulay(fx.polys, 1)
    assert [e for e in M.index.exps] == [(0, 0), (1, 0), (0, 1)]
    assert check_macaulay_solution(M, [0, 0, -1])
    assert oracle_solve(fx.polys, "R") is None
    with pytest.raises(ValueError):
        generate_fixture("lmp", {"n": 1, "d": 2})
    with pytest.raises(ValueError):
        generate_fixture("nope")


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3)])
def test_lmp_connectivity(n, d):
    fx = generate_fixture("lmp", {"n": n, "d": d})
    N = (d - 1) * (n - 1)
    M = build_macaulay(fx.polys, N)
    parent = list(range(M.shape[1]))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for (j, _), row in zip(M.row_labels, M.left):
        if j == n:
            continue
        cols = list(row)
        for c in cols[1:]:
            parent[find(c)] = find(cols[0])
    top = d ** (n - 1)
    band = {}
    for k, e in enumerate(M.index.exps):
        band.setdefault(find(k), set()).add(lmp_weight(e, d) // top)
    assert all(len(b) == 1 for b in band.values())


def test_inf_family_fixture():
    fx = generate_fixture("inf_family", {"n": 2, "d": 2})
    assert fx.num_vars == 3 and fx.expected["small_degree"] == 1
    M = build_macaulay(fx.polys, 1)
    assert check_macaulay_solution(M, [fx.candidate(e) for e in M.index.exps], nonhomogeneous=True)
    assert oracle_solve(fx.polys, "Rinf") is None


def test_stripes():
    fx = generate_fixture("stripes")
    for N in (4, 6):
        M = build_macaulay(fx.polys, N)
        a = candidate_vector(fx, N)
        assert check_macaulay_solution(M, [a[e] for e in M.index.exps])
    assert stripes_psi((1, 3)) == 3 and stripes_psi((2, 3)) == -3
    gaps = [max_neighbour_gap(candidate_vector(fx, N)) for N in (4, 6, 8)]
    assert gaps == sorted(gaps) and gaps[0] < gaps[-1]
    assert is_root_system(fx.polys, oracle_solve(fx.polys, "R"))


def test_pyramid_is_not_affine_far_out():
    fx = generate_fixture("stepped_pyramid", {"width": 2})
    a = candidate_vector(fx, 8)
    M = build_macaulay(fx.polys, 8)
    assert check_macaulay_solution(M, [a[e] for e in M.index.exps])
    # along the diagonal the increments change, so no affine function matches
    diag = [a[(t, t)] for t in range(5)]
    steps = {diag[t + 1] - diag[t] for t in range(4)}
    assert len(steps) > 1
