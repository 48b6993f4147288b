import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from tropsatz.core import INF
from tropsatz.linsys import TropMatrix
from tropsatz.poly import MinPlusPolynomial, TropicalPolynomial

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

small = st.fractions(min_value=-4, max_value=4, max_denominator=4)
values = st.one_of(small, st.just(INF))


def tp(n, pairs):
    """Shorthand: tp(1, [(0, (0,)), (1, (1,))]) is 0 + 1x."""
    return TropicalPolynomial.from_terms(n, [(Fraction(c), tuple(e)) for c, e in pairs])


def mp(n, lhs, rhs):
    return MinPlusPolynomial(tp(n, lhs), tp(n, rhs))


def mat(rows):
    return TropMatrix.from_dense(rows)


def random_matrix(rng, m, n, choices=(-2, -1, 0, 1, 2, INF)):
    return mat([[rng.choice(choices) for _ in range(n)] for _ in range(m)])


@pytest.fixture
def rng():
    return random.Random(20261018)
