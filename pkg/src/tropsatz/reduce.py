"""Translations between tropical and min-plus systems."""

from __future__ import annotations

from typing import Sequence

from .poly import MinPlusPolynomial, TropicalPolynomial, system_num_vars


def tropical_to_minplus(T: Sequence[TropicalPolynomial]) -> list[MinPlusPolynomial]:
    """One equation per monomial: the minimum equals the minimum without that monomial.

    A single-monomial polynomial gives (f, ∞), which holds exactly where f is ∞.
    """
    out = []
    for f in T:
        if f.doubled:
            raise ValueError("repeated monomials are not supported here")
        for e in f.terms:
            rest = {k: c for k, c in f.terms.items() if k != e}
            out.append(MinPlusPolynomial(f, TropicalPolynomial(f.num_vars, rest)))
    return out


def _lift(n: int, e, primed: bool) -> tuple:
    z = (0,) * n
    return z + tuple(e) if primed else tuple(e) + z


def minplus_to_tropical(A: Sequence[MinPlusPolynomial]) -> list[TropicalPolynomial]:
    """A tropical system in 2n variables whose roots are exactly (a, a) for the roots a of A.

    Constant monomials m(x) and m(x′) coincide; they are kept as a repeated
    monomial so that the minimum still counts as attained twice.
    """
    n = system_num_vars(A)
    out = []
    for i in range(n):
        out.append(TropicalPolynomial(2 * n, {_lift(n, _unit(n, i), False): 0, _lift(n, _unit(n, i), True): 0}))
    for p in A:
        for left, right in ((p.lhs, p.rhs), (p.rhs, p.lhs)):
            doubled = [(c, _lift(n, e, primed)) for e, c in left.terms.items() for primed in (False, True)]
            for e, c in right.terms.items():
                out.append(TropicalPolynomial.from_terms(2 * n, doubled + [(c, _lift(n, e, False))], merge=True))
    return out


def _unit(n: int, i: int) -> tuple:
    return tuple(int(j == i) for j in range(n))


def embed(a: Sequence) -> list:
    """The injective map a -> (a, a)."""
    return list(a) + list(a)


def project(b: Sequence) -> list:
    n = len(b) // 2
    return list(b[:n])
