import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropsatz.core import INF, exponents_upto
from tropsatz.poly import (
    TropicalPolynomial, chi, eval_tropical, is_root_minplus, is_root_system, is_root_tropical,
    is_singular, sing_set,
)

from conftest import mp, small, tp

INTRO = [tp(1, [(0, (0,)), (0, (1,))]), tp(1, [(0, (0,)), (1, (1,))])]


def test_eval_examples():
    assert eval_tropical(INTRO[0], [0]) == (0, {(0,), (1,)})
    assert eval_tropical(tp(1, [(0, (1,))]), [INF]) == (INF, set())
    assert eval_tropical(INTRO[1], [0]) == (0, {(0,)})


def test_root_examples():
    assert not is_root_system(INTRO, [0])
    assert is_root_tropical(INTRO[0], [0])
    assert is_root_tropical(tp(1, [(0, (1,))]), [INF])
    assert is_root_minplus(mp(1, [(0, (1,))], [(1, (0,))]), [1])
    assert not is_root_minplus(mp(1, [(0, (0,))], [(1, (1,))]), [0])
    assert is_root_minplus(mp(2, [(0, (1, 0))], [(0, (0, 1))]), [INF, INF])


def test_construction_rules():
    f = TropicalPolynomial(1, {(0,): Fraction(0), (1,): INF})
    assert f.terms == {(0,): 0}
    with pytest.raises(ValueError):
        TropicalPolynomial.from_terms(1, [(0, (1,)), (1, (1,))])
    g = TropicalPolynomial.from_terms(1, [(0, (1,)), (0, (1,)), (2, (0,))], merge=True)
    assert g.doubled == {(1,)}
    # a repeated monomial attaining the minimum alone still gives a root
    assert is_root_tropical(g, [0])
    assert not is_root_tropical(g, [5])
    with pytest.raises(ValueError):
        eval_tropical(g, [0, 0])


def test_sing_set_examples():
    phi = {(0,): 0, (1,): 0, (2,): 0}
    s = sing_set(phi, {(0,): 0, (1,): -1, (2,): 0})
    assert (s.shift, s.points) == (-1, {(1,)}) and not is_singular(phi, {(0,): 0, (1,): -1, (2,): 0})
    s = sing_set(phi, {(0,): 0, (1,): -1, (2,): -1})
    assert (s.shift, s.points) == (-1, {(1,), (2,)})
    assert sing_set({(0,): 0}, {(1,): 0}).points == frozenset()
    assert is_singular({(0,): 0}, {(1,): 0})


coef = st.integers(-2, 2)


@st.composite
def poly_and_point(draw):
    n = draw(st.integers(1, 2))
    exps = exponents_upto(n, 2)
    chosen = draw(st.lists(st.sampled_from(exps), min_size=1, max_size=4, unique=True))
    f = tp(n, [(draw(coef), e) for e in chosen])
    a = [draw(small) for _ in range(n)]
    return f, a


@given(poly_and_point())
def test_hyperplane_correspondence(case):
    f, a = case
    assert is_root_tropical(f, a) == is_singular(chi(a, f.terms), f.phi())


row_maps = st.dictionaries(st.integers(0, 4), small, min_size=1, max_size=5)


@given(row_maps, row_maps)
def test_linear_row_correspondence(row, vec):
    # row r of a tropical linear system, vector a with finite domain: the row
    # is satisfied iff -a is singular to r
    vals = [c + vec[k] for k, c in row.items() if k in vec]
    satisfied = not vals or vals.count(min(vals)) >= 2
    assert satisfied == is_singular({k: -v for k, v in vec.items()}, row)


@given(poly_and_point(), st.integers(0, 3), st.integers(1, 3))
def test_eval_monotone(case, which, bump):
    f, a = case
    terms = dict(f.terms)
    e = list(terms)[which % len(terms)]
    terms[e] += bump
    assert eval_tropical(TropicalPolynomial(f.num_vars, terms), a)[0] >= eval_tropical(f, a)[0]


def test_root_grid_agrees_with_definition():
    f = tp(2, [(0, (0, 0)), (1, (1, 0)), (-1, (0, 1))])
    grid = [INF] + [Fraction(k, 2) for k in range(-4, 5)]
    for a in itertools.product(grid, repeat=2):
        vals = []
        for e, c in f.terms.items():
            v = sum((x * k for x, k in zip(a, e) if k), Fraction(0)) if all(x is not INF or k == 0 for x, k in zip(a, e)) else INF
            vals.append(v if v is INF else v + c)
        m = min(vals)
        assert is_root_tropical(f, list(a)) == (m is INF or vals.count(m) >= 2)
