"""Mean payoff games for min-plus inequality systems, solved as energy games.

For A ⊙ x ≤ B ⊙ x there is a row vertex r_i per row and a column vertex c_j per
variable. The column player moves r_i -> c_j gaining -a_ij, the row player moves
c_j -> r_i gaining b_ij for the column player. The least energy credits that
keep the column player's running total nonnegative solve the system.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import INF, ExtValue, common_denominator
from .linsys import MinPlusSystem, Relation, check_minplus_solution, matvec

log = logging.getLogger(__name__)

# integer credits use math.inf as the top element; it is never used for arithmetic results
_TOP = math.inf


@dataclass(frozen=True)
class GameGraph:
    m: int
    n: int
    row_edges: tuple  # row_edges[i] = ((j, a_ij), ...): edge r_i -> c_j of weight -a_ij
    col_edges: tuple  # col_edges[j] = ((i, b_ij), ...): edge c_j -> r_i of weight b_ij

    @property
    def num_vertices(self) -> int:
        return self.m + self.n

    def edges(self):
        """Yield (source, target, weight) with vertices named ('r', i) or ('c', j)."""
        for i, es in enumerate(self.row_edges):
            for j, a in es:
                yield ("r", i), ("c", j), -a
        for j, es in enumerate(self.col_edges):
            for i, b in es:
                yield ("c", j), ("r", i), b


@dataclass(frozen=True)
class CreditVector:
    rows: tuple
    cols: tuple


def build_game(S: MinPlusSystem) -> GameGraph:
    if S.relation is Relation.EQ:
        raise ValueError("build_game needs an inequality system")
    A, B = S.lhs, S.rhs
    row_edges = tuple(tuple(sorted(r.items())) for r in A.rows)
    col_edges = [[] for _ in range(A.n)]
    for i, r in enumerate(B.rows):
        for j, b in r.items():
            col_edges[j].append((i, b))
    return GameGraph(A.m, A.n, row_edges, tuple(tuple(es) for es in col_edges))


def dump_game(G: GameGraph) -> str:
    from .core import format_value

    lines = []
    for (k1, i1), (k2, i2), w in G.edges():
        lines.append(f"{k1}{i1 + 1} {k2}{i2 + 1} {format_value(w)}")
    return "\n".join(lines)


def _integer_weights(G: GameGraph, factor: int = 1, shift: int = 0):
    """Integer row/column edge lists with weights w -> factor*D*w - shift."""
    den = common_denominator([a for es in G.row_edges for _, a in es] + [b for es in G.col_edges for _, b in es])
    # the column player's gain on r->c is -a, so a scales to factor*D*a + shift
    rows = [[(j, int(a * den) * factor + shift) for j, a in es] for es in G.row_edges]
    cols = [[(i, int(b * den) * factor - shift) for i, b in es] for es in G.col_edges]
    return rows, cols, den


def _lfp(m: int, n: int, rows, cols, order: str = "fifo", watch=()):
    """Least fixed point of the clamped Bellman operator on integer weights.

    Worklist lifting, accelerated by occasional sound jumps (see _trap_jump).
    Returns (row credits, column credits) with _TOP for ∞, or None as soon as a
    column in ``watch`` reaches ∞ (credits only grow, so it stays there).
    """
    watch = set(watch)
    V = m + n
    # a finite credit is at most the deficit of a simple path, so at most the
    # sum over vertices of their worst outgoing loss
    # (rows lose a on r -> c, columns lose -b on c -> r)
    cutoff = sum(max([0] + [a for _, a in es]) for es in rows)
    cutoff += sum(max([0] + [-b for _, b in es]) for es in cols)
    er = [0] * m
    ec = [0] * n
    # predecessors: column j is read by rows that point to it, row i by columns that point to it
    col_in = [[] for _ in range(n)]
    for i, es in enumerate(rows):
        for j, _ in es:
            col_in[j].append(i)
    row_in = [[] for _ in range(m)]
    for j, es in enumerate(cols):
        for i, _ in es:
            row_in[i].append(j)

    def lift_row(i):
        es = rows[i]
        if not es:
            return _TOP
        v = min(ec[j] + a for j, a in es)
        if v == _TOP or v > cutoff:
            return _TOP
        return v if v > 0 else 0

    def lift_col(j):
        es = cols[j]
        if not es:
            return 0
        v = max(er[i] - b for i, b in es)
        if v == _TOP or v > cutoff:
            return _TOP
        return v if v > 0 else 0

    # vertex ids: rows 0..m-1, columns m..m+n-1
    queue = list(range(V)) if order == "fifo" else list(range(V - 1, -1, -1))
    inq = [True] * V
    head = 0
    lifts = 0
    budget = 2 * V + 16
    while True:
        while head < len(queue):
            v = queue[head]
            head += 1
            inq[v] = False
            if v < m:
                new = lift_row(v)
                if new > er[v]:
                    er[v] = new
                    lifts += 1
                    for j in row_in[v]:
                        if not inq[m + j]:
                            inq[m + j] = True
                            queue.append(m + j)
            else:
                j = v - m
                new = lift_col(j)
                if new > ec[j]:
                    if new == _TOP and j in watch:
                        return None
                    ec[j] = new
                    lifts += 1
                    for i in col_in[j]:
                        if not inq[i]:
                            inq[i] = True
                            queue.append(i)
            if head > 4 * V and head * 2 > len(queue):
                queue = queue[head:]
                head = 0
            if lifts >= budget:
                lifts = 0
                raised = _trap_jump(m, n, rows, cols, er, ec, cutoff)
                if any(ec[j] == _TOP for j in watch):
                    return None
                for v2 in raised:
                    preds = row_in[v2] if v2 < m else col_in[v2 - m]
                    off = m if v2 < m else 0
                    for u in preds:
                        if not inq[off + u]:
                            inq[off + u] = True
                            queue.append(off + u)
        break
    return er, ec


def _trap_jump(m, n, rows, cols, er, ec, cutoff) -> list[int]:
    """Raise a set X of vertices at once when that is provably below the fixed point.

    Slack of an edge u -> w is how far e(w) exceeds what u needs along it: for a
    row edge e(c) + a - e(r), for a column edge e(r) - b - e(c). X must satisfy:
    row vertices have every edge at slack >= 0 and every edge leaving X at
    slack > 0; column vertices keep a chosen witness edge into X with slack >= 0;
    and the zero-slack edges inside X under those choices form no cycle. Then
    any cycle the column player can close inside X loses energy, so from X he
    either loses or leaves X paying at least delta = the least exit slack,
    and every credit in X can grow by delta. Returns the raised vertex ids.
    """
    V = m + n
    inX = [False] * V
    for i in range(m):
        inX[i] = er[i] != _TOP
    for j in range(n):
        inX[m + j] = ec[j] != _TOP

    def rslack(i, j, a):
        return ec[j] + a - er[i]

    def cslack(j, i, b):
        return er[i] - b - ec[j]

    # rows with a negative-slack edge can never join
    for i in range(m):
        if inX[i] and any(rslack(i, j, a) < 0 for j, a in rows[i]):
            inX[i] = False

    tau = [None] * n
    while True:
        changed = True
        while changed:
            changed = False
            for i in range(m):
                if inX[i]:
                    for j, a in rows[i]:
                        if not inX[m + j] and rslack(i, j, a) == 0:
                            inX[i] = False
                            changed = True
                            break
            for j in range(n):
                if inX[m + j]:
                    best = None
                    for i, b in cols[j]:
                        if inX[i]:
                            s = cslack(j, i, b)
                            if s >= 0 and (best is None or s > best[1]):
                                best = (i, s)
                    if best is None:
                        inX[m + j] = False
                        changed = True
                    else:
                        tau[j] = best
        # zero-slack edges inside X
        adj: dict[int, list[int]] = {}
        for i in range(m):
            if inX[i]:
                out = [m + j for j, a in rows[i] if inX[m + j] and rslack(i, j, a) == 0]
                if out:
                    adj[i] = out
        for j in range(n):
            if inX[m + j] and tau[j][1] == 0:
                adj[m + j] = [tau[j][0]]
        cyclic = _cyclic_vertices(adj)
        if not cyclic:
            break
        for v in cyclic:
            inX[v] = False

    members = [v for v in range(V) if inX[v]]
    if not members:
        return []
    delta = _TOP
    for i in range(m):
        if inX[i]:
            for j, a in rows[i]:
                if not inX[m + j]:
                    s = rslack(i, j, a)
                    if s < delta:
                        delta = s
    for v in members:
        if v < m:
            nv = er[v] + delta
            er[v] = _TOP if nv > cutoff else nv
        else:
            nv = ec[v - m] + delta
            ec[v - m] = _TOP if nv > cutoff else nv
    log.debug("trap jump raised %d vertices by %s", len(members), delta)
    return members


def _cyclic_vertices(adj: dict) -> set:
    """Vertices lying on a directed cycle (iterative Tarjan)."""
    index: dict = {}
    low: dict = {}
    onstack: set = set()
    stack: list = []
    out: set = set()
    counter = 0
    for root in adj:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, k = work.pop()
            if k == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack.add(v)
            succ = adj.get(v, ())
            if k < len(succ):
                work.append((v, k + 1))
                w = succ[k]
                if w not in index:
                    work.append((w, 0))
                elif w in onstack:
                    low[v] = min(low[v], index[w])
                continue
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1:
                    out.update(comp)
    return out


def _to_ext(v, den) -> ExtValue:
    return INF if v == _TOP else Fraction(v, den)


def min_credits(G: GameGraph, order: str = "fifo", watch=()) -> Optional[CreditVector]:
    """Least credits; None when a column in ``watch`` turns out infinite."""
    rows, cols, den = _integer_weights(G)
    out = _lfp(G.m, G.n, rows, cols, order, watch)
    if out is None:
        return None
    er, ec = out
    return CreditVector(tuple(_to_ext(v, den) for v in er), tuple(_to_ext(v, den) for v in ec))


def strict_credits(G: GameGraph, order: str = "fifo") -> CreditVector:
    """Credits of the game with integer weights w replaced by V·w − 1.

    Finite exactly where the column player wins the mean payoff game of G.
    """
    V = G.num_vertices
    rows, cols, den = _integer_weights(G, factor=V, shift=1)
    er, ec = _lfp(G.m, G.n, rows, cols, order)
    return CreditVector(tuple(_to_ext(v, den * V) for v in er), tuple(_to_ext(v, den * V) for v in ec))


def _select(cred: CreditVector, S_fin: Iterable[int], R_fin: Iterable[int]) -> Optional[list]:
    if any(cred.cols[i] is INF for i in S_fin):
        return None
    if any(cred.rows[j] is INF for j in R_fin):
        return None
    return list(cred.cols)


def solve_nonstrict(S: MinPlusSystem, S_fin: Iterable[int] = (), R_fin: Iterable[int] = ()) -> Optional[list]:
    """Least solution of A ⊙ x ≤ B ⊙ x from the credits, if it meets the finiteness demands."""
    G = build_game(MinPlusSystem(S.lhs, S.rhs, Relation.LEQ))
    S_fin = list(S_fin)
    cred = min_credits(G, watch=S_fin)
    x = None if cred is None else _select(cred, S_fin, R_fin)
    if x is not None:
        check = MinPlusSystem(S.lhs, S.rhs, Relation.LEQ)
        if not check_minplus_solution(check, x):
            raise AssertionError("energy game credits do not solve the system")
        lhs = matvec(S.lhs, x)
        if any(lhs[j] is INF for j in R_fin):
            raise AssertionError("row finiteness lost")
    return x


def solve_strict(S: MinPlusSystem, S_fin: Iterable[int] = (), R_fin: Iterable[int] = ()) -> Optional[list]:
    """A solution of A ⊙ x < B ⊙ x (with ∞ < ∞ allowed) meeting the finiteness demands."""
    S_fin, R_fin = list(S_fin), list(R_fin)
    G = build_game(MinPlusSystem(S.lhs, S.rhs, Relation.LEQ))
    x = _select(strict_credits(G), S_fin, R_fin)
    if x is not None:
        if not check_minplus_solution(MinPlusSystem(S.lhs, S.rhs, Relation.LT), x):
            raise AssertionError("strict credits do not solve the strict system")
        lhs = matvec(S.lhs, x)
        if any(lhs[j] is INF for j in R_fin):
            raise AssertionError("row finiteness lost")
    return x


def winners(G: GameGraph) -> dict:
    """Per start vertex: 'column', 'row' or 'draw' as the mean payoff outcome."""
    nonlose = min_credits(G)
    win = strict_credits(G)
    out = {}
    for kind, a, b in (("r", nonlose.rows, win.rows), ("c", nonlose.cols, win.cols)):
        for k, (u, w) in enumerate(zip(a, b)):
            if w is not INF:
                out[(kind, k)] = "column"
            elif u is not INF:
                out[(kind, k)] = "draw"
            else:
                out[(kind, k)] = "row"
    return out
