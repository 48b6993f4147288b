"""Tropical and min-plus linear systems over sparse matrices."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import INF, ExtValue, ext


class TropMatrix:
    """An m × n matrix over ℚ∞ stored as one dict of finite entries per row.

    ``doubled`` optionally marks, per row, columns whose entry counts twice
    when it attains the row minimum (a monomial repeated in a polynomial).
    """

    __slots__ = ("m", "n", "rows", "doubled")

    def __init__(self, m: int, n: int, rows: Iterable[Mapping[int, ExtValue]], doubled=None):
        self.m = m
        self.n = n
        clean = []
        for r in rows:
            d = {}
            for j, v in r.items():
                if not 0 <= j < n:
                    raise ValueError(f"column {j} out of range for {n} columns")
                v = ext(v)
                if v is not INF:
                    d[j] = v
            clean.append(d)
        if len(clean) != m:
            raise ValueError(f"expected {m} rows, got {len(clean)}")
        self.rows = tuple(clean)
        self.doubled = tuple(frozenset(d) for d in doubled) if doubled else tuple(frozenset() for _ in clean)
        if len(self.doubled) != m:
            raise ValueError("one doubled set per row expected")

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "TropMatrix":
        m = len(data)
        n = len(data[0]) if m else 0
        if any(len(r) != n for r in data):
            raise ValueError("ragged matrix")
        return cls(m, n, [{j: v for j, v in enumerate(r)} for r in data])

    def to_dense(self) -> list[list[ExtValue]]:
        return [[r.get(j, INF) for j in range(self.n)] for r in self.rows]

    def entry(self, i: int, j: int) -> ExtValue:
        return self.rows[i].get(j, INF)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def transpose(self) -> "TropMatrix":
        cols: list[dict] = [{} for _ in range(self.n)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return TropMatrix(self.n, self.m, cols)

    def columns(self) -> list[dict]:
        return self.transpose().rows

    def __eq__(self, other):
        return (
            isinstance(other, TropMatrix)
            and self.shape == other.shape
            and self.rows == other.rows
            and self.doubled == other.doubled
        )

    def __repr__(self):
        return f"TropMatrix({self.m}x{self.n}, {sum(map(len, self.rows))} finite)"


class Relation(enum.Enum):
    EQ = "="
    LEQ = "<="
    LT = "<"


@dataclass(frozen=True)
class MinPlusSystem:
    lhs: TropMatrix
    rhs: TropMatrix
    relation: Relation = Relation.LEQ

    def __post_init__(self):
        if self.lhs.shape != self.rhs.shape:
            raise ValueError(f"shape mismatch {self.lhs.shape} vs {self.rhs.shape}")

    @property
    def shape(self):
        return self.lhs.shape


def row_value(row: Mapping[int, ExtValue], x: Sequence[ExtValue]) -> ExtValue:
    best = INF
    for j, a in row.items():
        xj = x[j]
        if xj is INF:
            continue
        v = a + xj
        if v < best:
            best = v
    return best


def matvec(A: TropMatrix, x: Sequence[ExtValue]) -> list[ExtValue]:
    if len(x) != A.n:
        raise ValueError(f"vector of length {len(x)} for {A.n} columns")
    x = [ext(v) for v in x]
    return [row_value(r, x) for r in A.rows]


def row_argmin(row: Mapping[int, ExtValue], x: Sequence[ExtValue]) -> tuple[ExtValue, list[int]]:
    best = INF
    arg: list[int] = []
    for j, a in row.items():
        if x[j] is INF:
            continue
        v = a + x[j]
        if v < best:
            best, arg = v, [j]
        elif v == best:
            arg.append(j)
    return best, sorted(arg)


def check_tropical_solution(A: TropMatrix, x: Sequence[ExtValue]) -> bool:
    if len(x) != A.n:
        raise ValueError(f"vector of length {len(x)} for {A.n} columns")
    x = [ext(v) for v in x]
    for r, dbl in zip(A.rows, A.doubled):
        v, arg = row_argmin(r, x)
        if v is not INF and len(arg) < 2 and not (arg and arg[0] in dbl):
            return False
    return True


def _holds(rel: Relation, a: ExtValue, b: ExtValue) -> bool:
    if rel is Relation.EQ:
        return a == b
    if rel is Relation.LEQ:
        return a <= b
    # ∞ < ∞ is accepted
    if a is INF and b is INF:
        return True
    return a < b


def check_minplus_solution(S: MinPlusSystem, x: Sequence[ExtValue]) -> bool:
    left = matvec(S.lhs, x)
    right = matvec(S.rhs, x)
    return all(_holds(S.relation, a, b) for a, b in zip(left, right))


def eq_to_ineq(S: MinPlusSystem) -> MinPlusSystem:
    """[A; B] ⊙ x ≤ [B; A] ⊙ x, equivalent to A ⊙ x = B ⊙ x."""
    if S.relation is not Relation.EQ:
        raise ValueError("eq_to_ineq needs an equation system")
    A, B = S.lhs, S.rhs
    top = TropMatrix(2 * A.m, A.n, A.rows + B.rows)
    bot = TropMatrix(2 * A.m, A.n, B.rows + A.rows)
    return MinPlusSystem(top, bot, Relation.LEQ)


def tropical_to_minplus_linear(A: TropMatrix, eps=Fraction(1)) -> MinPlusSystem:
    """Stack the blocks (A + εC_l) ⊙ x ≤ A ⊙ x for l = 1..n."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    left, right = [], []
    for l in range(A.n):
        for r in A.rows:
            left.append({j: (v + eps if j == l else v) for j, v in r.items()})
            right.append(dict(r))
    m = A.m * A.n
    return MinPlusSystem(TropMatrix(m, A.n, left), TropMatrix(m, A.n, right), Relation.LEQ)


def lean_tropical_system(A: TropMatrix) -> tuple[MinPlusSystem, list[tuple[int, int]]]:
    """A pruned form of the ε-block system with the same solutions for every ε > 0.

    Block l, row i reads min_j (a_ij + [j = l]ε + x_j) ≤ min_j (a_ij + x_j), which
    says that the row minimum is reached off column l or at least as low as
    a_il + x_l. So it is min_{j≠l} (a_ij + x_j) ≤ a_il + x_l, and it is void
    when a_il = ∞ or when column l is doubled in row i. The second return
    value lists (row i, column l) per new row.
    """
    left, right, labels = [], [], []
    for i, r in enumerate(A.rows):
        for l in sorted(r):
            if l in A.doubled[i]:
                continue
            left.append({j: v for j, v in r.items() if j != l})
            right.append({l: r[l]})
            labels.append((i, l))
    m = len(labels)
    return MinPlusSystem(TropMatrix(m, A.n, left), TropMatrix(m, A.n, right), Relation.LEQ), labels


def homogenize(x: Sequence[ExtValue], const_col: int) -> list[ExtValue]:
    """Insert the constant coordinate 0 so that A ⊙ (x, 0) becomes a homogeneous product."""
    x = list(x)
    return x[:const_col] + [Fraction(0)] + x[const_col:]


def dehomogenize(x: Sequence[ExtValue], const_col: int):
    """Turn a homogeneous solution with a finite constant coordinate into a non-homogeneous one.

    Returns None when that coordinate is ∞ (no non-homogeneous solution comes from x).
    """
    c = ext(x[const_col])
    if c is INF:
        return None
    shifted = [INF if v is INF else ext(v) - c for v in x]
    return shifted[:const_col] + shifted[const_col + 1:]


def check_nonhomogeneous_solution(A: TropMatrix, x: Sequence[ExtValue], const_col: int) -> bool:
    return check_tropical_solution(A, homogenize(x, const_col))


@dataclass(frozen=True)
class Normalized:
    matrix: TropMatrix
    kept_rows: tuple
    kept_cols: tuple


def normalize(A: TropMatrix) -> Normalized:
    """Drop all-∞ rows and columns, remembering the original indices."""
    rows = [i for i, r in enumerate(A.rows) if r]
    used = sorted({j for r in A.rows for j in r})
    pos = {j: k for k, j in enumerate(used)}
    new = [{pos[j]: v for j, v in A.rows[i].items()} for i in rows]
    return Normalized(TropMatrix(len(rows), len(used), new), tuple(rows), tuple(used))
