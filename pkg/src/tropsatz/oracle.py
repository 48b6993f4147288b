"""Brute-force deciders and the example families. These do not use the Nullstellensatz."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import INF, exponents_upto, unit_exponent, zero_exponent
from .game import GameGraph
from .poly import MinPlusPolynomial, TropicalPolynomial


# exact linear feasibility

@dataclass(frozen=True)
class Constraint:
    """coeffs · x (op) rhs with op one of '==', '<=', '<', '>=', '>'."""

    coeffs: tuple
    op: str
    rhs: Fraction

    def __post_init__(self):
        if self.op not in ("==", "<=", "<", ">=", ">"):
            raise ValueError(f"unknown relation {self.op!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


def _normalize_row(coeffs, rhs, strict):
    piv = next((abs(c) for c in coeffs if c), None)
    if piv is None:
        return coeffs, rhs, strict
    return tuple(c / piv for c in coeffs), rhs / piv, strict


def fm_feasible(constraints: Sequence[Constraint], n: Optional[int] = None) -> Optional[list]:
    """A rational point satisfying all constraints, or None. Exact Fourier–Motzkin."""
    if n is None:
        n = len(constraints[0].coeffs) if constraints else 0
    eqs = []
    ineqs = set()
    for c in constraints:
        if len(c.coeffs) != n:
            raise ValueError("constraint length mismatch")
        if c.op == "==":
            eqs.append((list(c.coeffs), c.rhs))
        elif c.op in ("<=", "<"):
            ineqs.add(_normalize_row(c.coeffs, c.rhs, c.op == "<"))
        else:
            ineqs.add(_normalize_row(tuple(-v for v in c.coeffs), -c.rhs, c.op == ">"))

    # Gaussian elimination of equalities: x_k = (rhs - rest) / a_k
    subs = []
    while eqs:
        a, b = eqs.pop()
        k = next((i for i, v in enumerate(a) if v), None)
        if k is None:
            if b != 0:
                return None
            continue
        expr = ([-v / a[k] if i != k else Fraction(0) for i, v in enumerate(a)], b / a[k])
        subs.append((k, expr))

        def sub(coeffs, rhs):
            ck = coeffs[k]
            if not ck:
                return list(coeffs), rhs
            new = [c + ck * e for c, e in zip(coeffs, expr[0])]
            new[k] = Fraction(0)
            return new, rhs - ck * expr[1]

        eqs = [sub(a2, b2) for a2, b2 in eqs]
        ineqs = {_normalize_row(tuple(nc), nr, s) for nc, nr, s in (sub(c, r) + (s,) for c, r, s in ineqs)}

    stages = []
    current = ineqs
    for k in range(n):
        stages.append((k, current))
        pos, negs, rest = [], [], set()
        for row in current:
            c = row[0][k]
            if c > 0:
                pos.append(row)
            elif c < 0:
                negs.append(row)
            else:
                rest.add(row)
        for p, q in itertools.product(pos, negs):
            lp, lq = -q[0][k], p[0][k]
            coeffs = tuple(lp * x + lq * y for x, y in zip(p[0], q[0]))
            rest.add(_normalize_row(coeffs, lp * p[1] + lq * q[1], p[2] or q[2]))
        current = set()
        for row in rest:
            if any(row[0]):
                current.add(row)
            elif row[1] < 0 or (row[2] and row[1] == 0):
                return None
    x: list = [None] * n
    for k, rows in reversed(stages):
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for coeffs, rhs, strict in rows:
            c = coeffs[k]
            if not c:
                continue
            rem = rhs - sum(coeffs[i] * x[i] for i in range(n) if i != k and coeffs[i] and x[i] is not None)
            bound = rem / c
            if c > 0:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
            else:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
        x[k] = _pick(lo, lo_strict, hi, hi_strict)
        if x[k] is None:
            return None
    for k, (coef, const) in reversed(subs):
        x[k] = const + sum(c * v for c, v in zip(coef, x) if c)
    for c in constraints:
        if not _satisfied(c, x):
            raise AssertionError("Fourier-Motzkin witness fails a constraint")
    return x


def _pick(lo, lo_strict, hi, hi_strict):
    """A simple value in the interval, preferring 0 and then integers."""
    def ok(v):
        if lo is not None and (v < lo or (lo_strict and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_strict and v == hi)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    cands = []
    if lo is not None:
        cands += [Fraction(lo.__floor__() + 1), lo]
    if hi is not None:
        cands += [Fraction(hi.__ceil__() - 1), hi]
    for v in cands:
        if ok(v):
            return v
    if lo is not None and hi is not None and lo < hi:
        return (lo + hi) / 2
    return None


def _satisfied(c: Constraint, x) -> bool:
    v = sum(a * b for a, b in zip(c.coeffs, x))
    return {"==": v == c.rhs, "<=": v <= c.rhs, "<": v < c.rhs, ">=": v >= c.rhs, ">": v > c.rhs}[c.op]


# brute-force root finding

def _affine(c, e, alive):
    """c + ⟨x, e⟩ as (coeffs over alive variables, constant)."""
    return tuple(Fraction(e[i]) for i in alive), Fraction(c)


def _diff(p, q):
    return tuple(a - b for a, b in zip(p[0], q[0])), q[1] - p[1]


def _tropical_options(f: TropicalPolynomial, alive, dead):
    """Constraint lists under which f has a root, once the dead variables are ∞.

    Yields None if f vanishes to ∞ identically (always a root).
    """
    terms = [(e, c) for e, c in f.terms.items() if not any(e[i] for i in dead)]
    if not terms:
        return None
    forms = [_affine(c, e, alive) for e, c in terms]
    opts = []
    pairs = [(a, b) for a in range(len(terms)) for b in range(a + 1, len(terms))]
    pairs += [(a, a) for a, (e, _) in enumerate(terms) if e in f.doubled]
    for a, b in pairs:
        cons = []
        if a != b:
            d = _diff(forms[a], forms[b])
            cons.append(Constraint(d[0], "==", d[1]))
        for t in range(len(terms)):
            if t not in (a, b):
                d = _diff(forms[a], forms[t])
                cons.append(Constraint(d[0], "<=", d[1]))
        opts.append(cons)
    return opts


def _minplus_options(p: MinPlusPolynomial, alive, dead):
    sides = []
    for side in (p.lhs, p.rhs):
        sides.append([(e, c) for e, c in side.terms.items() if not any(e[i] for i in dead)])
    left, right = sides
    if not left and not right:
        return None
    if not left or not right:
        return []
    lf = [_affine(c, e, alive) for e, c in left]
    rf = [_affine(c, e, alive) for e, c in right]
    opts = []
    for a, b in itertools.product(range(len(lf)), range(len(rf))):
        d = _diff(lf[a], rf[b])
        cons = [Constraint(d[0], "==", d[1])]
        for t in range(len(lf)):
            if t != a:
                d = _diff(lf[a], lf[t])
                cons.append(Constraint(d[0], "<=", d[1]))
        for t in range(len(rf)):
            if t != b:
                d = _diff(rf[b], rf[t])
                cons.append(Constraint(d[0], "<=", d[1]))
        opts.append(cons)
    return opts


def _search(option_lists, nvars):
    """Depth-first choice of one option per polynomial, pruning infeasible prefixes."""
    def rec(k, acc):
        if k == len(option_lists):
            return fm_feasible(acc, nvars) if acc else [Fraction(0)] * nvars
        for cons in option_lists[k]:
            trial = acc + cons
            if fm_feasible(trial, nvars) is None:
                continue
            found = rec(k + 1, trial)
            if found is not None:
                return found
        return None

    return rec(0, [])


def oracle_solve(F: Sequence, semiring: str = "R", dead_ok: Optional[Callable] = None) -> Optional[list]:
    """A root of F found by enumeration straight from the root definitions, or None.

    dead_ok, if given, filters the sets of coordinates allowed to be ∞.
    """
    if not F:
        raise ValueError("empty system")
    n = F[0].num_vars
    if semiring not in ("R", "Rinf"):
        raise ValueError(f"unknown semiring {semiring!r}")
    dead_sets = [()]
    if semiring == "Rinf":
        dead_sets = [d for r in range(n + 1) for d in itertools.combinations(range(n), r)]
    for dead in dead_sets:
        if dead_ok is not None and not dead_ok(set(dead)):
            continue
        alive = [i for i in range(n) if i not in dead]
        lists = []
        ok = True
        for p in F:
            opts = _minplus_options(p, alive, dead) if isinstance(p, MinPlusPolynomial) else _tropical_options(p, alive, dead)
            if opts is None:
                continue
            if not opts:
                ok = False
                break
            lists.append(opts)
        if not ok:
            continue
        lists.sort(key=len)
        sol = _search(lists, len(alive))
        if sol is not None:
            point = [INF] * n
            for i, v in zip(alive, sol):
                point[i] = v
            return point
    return None


# brute-force linear alternatives

def _all_dead_sets(n):
    return [set(d) for r in range(n + 1) for d in itertools.combinations(range(n), r)]


def oracle_minplus_linear(A, B, strict: bool = False, var_ok: Optional[Callable] = None,
                          row_ok: Optional[Callable] = None) -> Optional[list]:
    """Some x with A ⊙ x ≤ B ⊙ x (or <, with ∞ < ∞ allowed) by enumeration.

    var_ok sees the set of ∞ coordinates; row_ok sees the set of rows where
    A ⊙ x is finite.
    """
    m, n = A.shape
    op = "<" if strict else "<="
    for dead in _all_dead_sets(n):
        if var_ok is not None and not var_ok(dead):
            continue
        alive = [j for j in range(n) if j not in dead]
        pos = {j: t for t, j in enumerate(alive)}
        fin_rows = {i for i in range(m) if any(j in A.rows[i] for j in alive)}
        if row_ok is not None and not row_ok(fin_rows):
            continue
        lists = []
        ok = True
        for i in range(m):
            L = [j for j in alive if j in A.rows[i]]
            R = [j for j in alive if j in B.rows[i]]
            if not R:
                continue
            if not L:
                ok = False
                break
            opts = []
            for l in L:
                cons = []
                for j in R:
                    coeffs = [Fraction(0)] * len(alive)
                    coeffs[pos[l]] += 1
                    coeffs[pos[j]] -= 1
                    cons.append(Constraint(tuple(coeffs), op, B.rows[i][j] - A.rows[i][l]))
                opts.append(cons)
            lists.append(opts)
        if not ok:
            continue
        lists.sort(key=len)
        sol = _search(lists, len(alive))
        if sol is not None:
            x = [INF] * n
            for j, v in zip(alive, sol):
                x[j] = v
            return x
    return None


def oracle_tropical_linear(A, var_ok: Optional[Callable] = None) -> Optional[list]:
    """Some x solving the tropical system A ⊙ x, by enumeration."""
    n = A.n
    F = [TropicalPolynomial(n, {unit_exponent(n, j): v for j, v in r.items()}) for r in A.rows if r]
    if not F:
        for dead in _all_dead_sets(n):
            if var_ok is None or var_ok(dead):
                return [INF if j in dead else Fraction(0) for j in range(n)]
        return None
    return oracle_solve(F, "Rinf", dead_ok=var_ok)


def oracle_tropical_dual(A, row_ok: Optional[Callable] = None) -> Optional[list]:
    """Some z where every row of Aᵀ ⊙ z has a unique minimum or is ∞ and the
    finite rows use distinct columns; row_ok sees the set of finite rows."""
    m, n = A.shape
    At = A.transpose()
    for dead in _all_dead_sets(m):
        alive = [i for i in range(m) if i not in dead]
        pos = {i: t for t, i in enumerate(alive)}
        live_rows = [j for j in range(n) if any(i in At.rows[j] for i in alive)]
        if row_ok is not None and not row_ok(set(live_rows)):
            continue
        choices = [[i for i in alive if i in At.rows[j]] for j in live_rows]
        for pick in itertools.product(*choices):
            if len(set(pick)) != len(pick):
                continue
            cons = []
            for j, i in zip(live_rows, pick):
                for i2 in alive:
                    if i2 != i and i2 in At.rows[j]:
                        coeffs = [Fraction(0)] * len(alive)
                        coeffs[pos[i]] += 1
                        coeffs[pos[i2]] -= 1
                        cons.append(Constraint(tuple(coeffs), "<", At.rows[j][i2] - At.rows[j][i]))
            sol = fm_feasible(cons, len(alive)) if cons else [Fraction(0)] * len(alive)
            if sol is not None:
                z = [INF] * m
                for i, v in zip(alive, sol):
                    z[i] = v
                return z
    return None


# brute-force game analysis

def oracle_game(G: GameGraph) -> dict:
    """Outcome per start vertex by enumerating positional strategies.

    Keys are ('r', i) and ('c', j); values 'column', 'row' or 'draw' for the
    sign of the mean payoff (positive favours the column player).
    """
    verts = [("r", i) for i in range(G.m)] + [("c", j) for j in range(G.n)]
    succ = {}
    for i, es in enumerate(G.row_edges):
        succ[("r", i)] = [(("c", j), -Fraction(a)) for j, a in es]
    for j, es in enumerate(G.col_edges):
        succ[("c", j)] = [(("r", i), Fraction(b)) for i, b in es]
    rows = [v for v in verts if v[0] == "r"]
    cols = [v for v in verts if v[0] == "c"]
    choices_r = [list(range(len(succ[v]))) or [None] for v in rows]
    choices_c = [list(range(len(succ[v]))) or [None] for v in cols]
    big = Fraction(10**9)
    out = {}
    best: dict = {v: None for v in verts}
    for sr in itertools.product(*choices_r):
        worst: dict = {v: None for v in verts}
        for sc in itertools.product(*choices_c):
            move = {}
            for v, k in zip(rows, sr):
                move[v] = None if k is None else succ[v][k]
            for v, k in zip(cols, sc):
                move[v] = None if k is None else succ[v][k]
            for v in verts:
                val = _play(v, move, big)
                if worst[v] is None or val < worst[v]:
                    worst[v] = val
        for v in verts:
            if best[v] is None or worst[v] > best[v]:
                best[v] = worst[v]
    for v in verts:
        val = best[v]
        out[v] = "column" if val > 0 else "row" if val < 0 else "draw"
    return out


def _play(start, move, big):
    """Mean weight of the eventual cycle; ±big when a stuck player loses."""
    seen = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        mv = move[v]
        if mv is None:
            # the player to move is stuck and loses
            return -big if v[0] == "r" else big
        path.append(mv[1])
        v = mv[0]
    cyc = path[seen[v]:]
    return sum(cyc) / len(cyc)


# example families

@dataclass
class Fixture:
    name: str
    kind: str  # "tropical" or "minplus"
    semiring: str
    num_vars: int
    polys: list
    expected: dict = field(default_factory=dict)
    candidate: Optional[Callable] = None  # exponent -> value, a proposed Macaulay solution


def _tp(n, pairs):
    return TropicalPolynomial.from_terms(n, pairs)


def lmp_weight(e, d) -> int:
    return sum(k * d**i for i, k in enumerate(e))


def generate_fixture(name: str, params: Optional[dict] = None) -> Fixture:
    params = dict(params or {})
    if name == "lmp":
        return _lmp(params.get("n", 2), params.get("d", 2), params.get("minplus", False))
    if name == "inf_family":
        return _inf_family(params.get("n", 2), params.get("d", 2), params.get("minplus", False))
    if name == "stepped_pyramid":
        return _stepped_pyramid(params.get("width", 10))
    if name == "stripes":
        return _stripes()
    if name == "intro":
        f = [_tp(1, [(0, (0,)), (0, (1,))]), _tp(1, [(0, (0,)), (1, (1,))])]
        return Fixture("intro", "tropical", "R", 1, f, {"root": False, "bound": 6})
    raise ValueError(f"unknown fixture {name!r}")


def _lmp(n: int, d: int, minplus: bool) -> Fixture:
    if n < 2 or d < 2:
        raise ValueError("lmp needs n >= 2 and d >= 2")
    z = zero_exponent(n)
    x = lambda i, k=1: unit_exponent(n, i, k)
    pieces = [((0, z), (0, x(0)))]
    for i in range(n - 1):
        pieces.append(((0, x(i, d)), (0, x(i + 1))))
    pieces.append(((0, z), (1, x(n - 1))))
    if minplus:
        polys = [MinPlusPolynomial(_tp(n, [a]), _tp(n, [b])) for a, b in pieces]
    else:
        polys = [_tp(n, [a, b]) for a, b in pieces]
    top = d ** (n - 1)

    def candidate(e):
        return Fraction(-(lmp_weight(e, d) // top))

    return Fixture(
        f"lmp({n},{d})", "minplus" if minplus else "tropical", "R", n, polys,
        {"root": False, "small_degree": (d - 1) * (n - 1)}, candidate,
    )


def _inf_family(n: int, d: int, minplus: bool) -> Fixture:
    if n < 2 or d < 2:
        raise ValueError("inf_family needs n >= 2 and d >= 2")
    nv = n + 1  # x_1..x_n then y
    z = zero_exponent(nv)
    x = lambda i, k=1: unit_exponent(nv, i, k)
    xy = tuple(1 if i in (0, n) else 0 for i in range(nv))
    pieces = [((0, xy), (0, z))]
    for i in range(n - 1):
        pieces.append(((0, x(i, d)), (0, x(i + 1))))
    pieces.append(((0, x(n - 2, d)), (1, x(n - 1))))
    if minplus:
        polys = [MinPlusPolynomial(_tp(nv, [a]), _tp(nv, [b])) for a, b in pieces]
    else:
        polys = [_tp(nv, [a, b]) for a, b in pieces]

    def candidate(e):
        return Fraction(0) if e[n] == lmp_weight(e[:n], d) else INF

    return Fixture(
        f"inf_family({n},{d})", "minplus" if minplus else "tropical", "Rinf", nv, polys,
        {"root": False, "small_degree": d ** (n - 1) - 1}, candidate,
    )


def pyramid_profile(t: int, width: int = 10) -> Fraction:
    """Height along the max-norm: flat on odd rings, slope one on even rings."""
    total = 0
    for s in range(t):
        if (s // width) % 2 == 1:
            total += 1
    return Fraction(total)


def _stepped_pyramid(width: int) -> Fixture:
    pts = []
    for a in range(4):
        for b in range(4):
            pts.append((-1 if a in (1, 2) and b in (1, 2) else 0, (a, b)))
    f = _tp(2, pts)

    def candidate(e):
        return -pyramid_profile(max(e), width)

    return Fixture("stepped_pyramid", "tropical", "R", 2, [f], {"root": True, "width": width}, candidate)


def stripes_psi(e) -> Fraction:
    x, y = e
    return Fraction(y if (x // 2) % 2 == 0 else -y)


def _stripes() -> Fixture:
    pts = [(0, (0, 0)), (-1, (0, 1)), (0, (0, 2)), (0, (1, 0)), (-1, (1, 1)), (0, (1, 2))]
    f = _tp(2, pts)
    return Fixture("stripes", "tropical", "R", 2, [f], {"root": True}, stripes_psi)


def candidate_vector(fx: Fixture, N: int) -> dict:
    return {e: fx.candidate(e) for e in exponents_upto(fx.num_vars, N)}


def max_neighbour_gap(values: dict) -> Fraction:
    """Largest |ψ(I) − ψ(I + e_i)| over finite neighbouring pairs."""
    gap = Fraction(0)
    for e, v in values.items():
        if v is INF:
            continue
        for i in range(len(e)):
            e2 = tuple(c + (1 if k == i else 0) for k, c in enumerate(e))
            w = values.get(e2)
            if w is not None and w is not INF:
                gap = max(gap, abs(v - w))
    return gap


def random_system(rng, n: int, k: int, d: int, minplus: bool = False, lo: int = -2, hi: int = 2,
                  max_terms: int = 3) -> list:
    """A random system with integer coefficients; every polynomial has at least two monomials."""
    exps = exponents_upto(n, d)

    def poly(size):
        chosen = rng.sample(exps, min(size, len(exps)))
        return TropicalPolynomial(n, {e: rng.randint(lo, hi) for e in chosen})

    out = []
    for _ in range(k):
        if minplus:
            out.append(MinPlusPolynomial(poly(rng.randint(1, max_terms - 1)), poly(rng.randint(1, max_terms - 1))))
        else:
            out.append(poly(rng.randint(2, max_terms)))
    return out
