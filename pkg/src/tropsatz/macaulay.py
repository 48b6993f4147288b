"""Truncated Macaulay matrices and the degree bounds."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .core import ExtValue, Exponent, dot, exp_add, exponents_upto
from .linsys import MinPlusSystem, Relation, TropMatrix
from .poly import MinPlusPolynomial, TropicalPolynomial, system_num_vars


class MonomialIndex:
    """Column ids for all exponents of degree at most N; the constant monomial is column 0."""

    def __init__(self, n: int, N: int):
        if N < 0:
            raise ValueError("negative degree bound")
        self.n = n
        self.N = N
        self.exps = exponents_upto(n, N)
        self.pos = {e: k for k, e in enumerate(self.exps)}
        assert len(self.exps) == comb(N + n, n)

    @property
    def const_col(self) -> int:
        return 0

    def __len__(self):
        return len(self.exps)

    def index(self, e: Exponent) -> int:
        return self.pos[tuple(e)]


@dataclass
class MacaulaySystem:
    index: MonomialIndex
    kind: str  # "tropical" or "minplus"
    row_labels: list  # (poly id j, shift J)
    left: list  # per row: column -> value (the only part for tropical rows)
    right: Optional[list] = None
    doubled: Optional[list] = None  # per tropical row: columns of repeated monomials

    @property
    def N(self) -> int:
        return self.index.N

    @property
    def shape(self):
        return (len(self.row_labels), len(self.index))

    def matrix(self) -> TropMatrix:
        if self.kind != "tropical":
            raise ValueError("a min-plus Macaulay system is a pair of matrices")
        return TropMatrix(len(self.left), len(self.index), self.left, self.doubled)

    def system(self) -> MinPlusSystem:
        if self.kind != "minplus":
            raise ValueError("a tropical Macaulay system is a single matrix")
        m, n = self.shape
        return MinPlusSystem(TropMatrix(m, n, self.left), TropMatrix(m, n, self.right), Relation.EQ)


def degree_bound(semiring: str, n: int, k: int, degrees: Sequence[int]) -> int:
    if k < 1 or not degrees:
        raise ValueError("empty system")
    if any(d < 0 for d in degrees):
        raise ValueError("negative degree")
    if semiring == "R":
        return (n + 2) * sum(degrees)
    if semiring == "Rinf":
        d = max(degrees)
        return 2 * (n + 2) ** 2 * k * (4 * d) ** (min(n, k) + 2)
    raise ValueError(f"unknown semiring {semiring!r}")


def system_bound(F: Sequence, semiring: str) -> int:
    return degree_bound(semiring, system_num_vars(F), len(F), [p.degree for p in F])


def _shift_rows(f: TropicalPolynomial, fdeg: int, idx: MonomialIndex, J: Exponent) -> dict:
    return {idx.pos[exp_add(J, e)]: c for e, c in f.terms.items()}


def build_macaulay_tropical(F: Sequence[TropicalPolynomial], N: int) -> MacaulaySystem:
    n = system_num_vars(F)
    if N < 0:
        raise ValueError("negative degree bound")
    idx = MonomialIndex(n, N)
    labels, rows, doubled = [], [], []
    for j, f in enumerate(F):
        d = f.degree
        for J in exponents_upto(n, N - d) if N >= d else []:
            labels.append((j, J))
            rows.append(_shift_rows(f, d, idx, J))
            doubled.append({idx.pos[exp_add(J, e)] for e in f.doubled})
    return MacaulaySystem(idx, "tropical", labels, rows, doubled=doubled)


def build_macaulay_minplus(F: Sequence[MinPlusPolynomial], N: int) -> MacaulaySystem:
    n = system_num_vars(F)
    if N < 0:
        raise ValueError("negative degree bound")
    idx = MonomialIndex(n, N)
    labels, left, right = [], [], []
    for j, p in enumerate(F):
        d = p.degree
        for J in exponents_upto(n, N - d) if N >= d else []:
            labels.append((j, J))
            left.append(_shift_rows(p.lhs, d, idx, J))
            right.append(_shift_rows(p.rhs, d, idx, J))
    return MacaulaySystem(idx, "minplus", labels, left, right)


def build_macaulay(F: Sequence, N: int) -> MacaulaySystem:
    if all(isinstance(p, MinPlusPolynomial) for p in F):
        return build_macaulay_minplus(F, N)
    if all(isinstance(p, TropicalPolynomial) for p in F):
        return build_macaulay_tropical(F, N)
    raise TypeError("mixed tropical and min-plus system")


def root_vector(index: MonomialIndex, a: Sequence[ExtValue]) -> list:
    """y_I = ⟨a, I⟩, the Macaulay solution coming from a root a."""
    return [dot(a, e) for e in index.exps]


def check_macaulay_solution(M: MacaulaySystem, y: Sequence[ExtValue], nonhomogeneous: bool = False) -> bool:
    from .linsys import check_minplus_solution, check_tropical_solution

    if nonhomogeneous and y[M.index.const_col] != 0:
        return False
    if M.kind == "tropical":
        return check_tropical_solution(M.matrix(), y)
    return check_minplus_solution(M.system(), y)


def embeds_rows(small: MacaulaySystem, big: MacaulaySystem) -> bool:
    """Every row of ``small`` is a row of ``big`` supported on the columns of ``small``.

    A solution of ``big`` restricted to those columns then solves ``small``, so
    an unsolvable ``small`` makes ``big`` unsolvable.
    """
    if small.kind != big.kind or small.index.n != big.index.n or small.N > big.N:
        return False
    pos = {label: k for k, label in enumerate(big.row_labels)}
    back = {k: big.index.pos[e] for k, e in enumerate(small.index.exps)}
    for t, label in enumerate(small.row_labels):
        k = pos.get(label)
        if k is None:
            return False
        sides = [(small.left, big.left)] + ([(small.right, big.right)] if small.right is not None else [])
        for s_rows, b_rows in sides:
            if {back[c]: v for c, v in s_rows[t].items()} != b_rows[k]:
                return False
    return True
