"""A small exact simplex method over fractions.

Rows are few in every use here (the dimension plus one), columns are points,
so a dense tableau with Bland's rule is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Optional[Fraction] = None
    x: Optional[list] = None
    duals: Optional[list] = None
    basis: Optional[list] = None


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


class _Tableau:
    """Fraction-free tableau: every entry is an integer over the common denominator D > 0."""

    def __init__(self, T, basis):
        self.T = T
        self.D = 1
        self.basis = basis

    def pivot(self, r, c):
        T, D = self.T, self.D
        p = T[r][c]
        row = T[r]
        for i, other in enumerate(T):
            if i == r:
                continue
            f = other[c]
            if f:
                T[i] = [(p * a - f * b) // D for a, b in zip(other, row)]
            elif p != D:
                T[i] = [(p * a) // D for a in other]
        self.D = p
        if p < 0:
            self.T = [[-a for a in t] for t in T]
            self.D = -p
        self.basis[r] = c

    def run(self, cost_row, allowed):
        m = len(self.basis)
        while True:
            z = self.T[cost_row]
            enter = next((j for j in allowed if z[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i in range(m):
                a = self.T[i][enter]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    # compare rhs_i / a with rhs_best / a_best
                    lhs = self.T[i][-1] * self.T[best][enter]
                    rhs = self.T[best][-1] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return "unbounded"
            self.pivot(best, enter)


def simplex(c: Sequence, M: Sequence[Sequence], r: Sequence) -> LPResult:
    """min c·x subject to M x = r, x ≥ 0, with dual prices for the rows."""
    m = len(M)
    k = len(c)
    cs = _lcm_den(c)
    ci = [int(Fraction(v) * cs) for v in c]
    rows, scales = [], []
    for i in range(m):
        sc = _lcm_den(list(M[i]) + [r[i]])
        row = [int(Fraction(v) * sc) for v in M[i]]
        rhs = int(Fraction(r[i]) * sc)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            sc = -sc
        rows.append(row + [int(t == i) for t in range(m)] + [rhs])
        scales.append(sc)
    phase2 = ci + [0] * m + [0]
    phase1 = [0] * k + [1] * m + [0]
    for t in range(m):
        phase1 = [a - b for a, b in zip(phase1, rows[t])]
    tab = _Tableau(rows + [phase2, phase1], [k + t for t in range(m)])
    tab.run(m + 1, range(k + m))
    if tab.T[m + 1][-1] != 0:
        return LPResult("infeasible")
    for t in range(m):
        if tab.basis[t] >= k:
            col = next((j for j in range(k) if tab.T[t][j] != 0), None)
            if col is not None:
                tab.pivot(t, col)
    status = tab.run(m, range(k))
    if status == "unbounded":
        return LPResult("unbounded")
    D = tab.D
    x = [Fraction(0)] * k
    for t, b in enumerate(tab.basis):
        if b < k:
            x[b] = Fraction(tab.T[t][-1], D)
    value = sum(Fraction(a) * xi for a, xi in zip(c, x) if xi)
    # reduced cost of artificial t is -π_t for the scaled rows
    duals = [Fraction(-tab.T[m][k + t], D) * scales[t] / cs for t in range(m)]
    basis = [b for b in tab.basis if b < k]
    return LPResult("optimal", value, x, duals, basis)


def solve_linear(A, b) -> Optional[list]:
    """Solve a square system exactly; None when singular."""
    n = len(A)
    M = [list(map(Fraction, A[i])) + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def lp_free(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """min c·x over free x with A_ub x ≤ b_ub and A_eq x = b_eq.

    Solved through the dual  min b·λ, Aᵀλ = −c, λ ≥ 0  whose prices are x.
    """
    nv = len(c)
    cols, costs = [], []
    for a, b in zip(A_ub, b_ub):
        cols.append(list(a))
        costs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        cols.append(list(a))
        costs.append(Fraction(b))
        cols.append([-v for v in a])
        costs.append(-Fraction(b))
    M = [[col[j] for col in cols] for j in range(nv)]
    res = simplex(costs, M, [-Fraction(v) for v in c])
    if res.status == "infeasible":
        return LPResult("unbounded")
    if res.status == "unbounded":
        return LPResult("infeasible")
    x = res.duals
    return LPResult("optimal", -res.value, x)
