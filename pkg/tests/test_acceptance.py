"""Acceptance criteria, one test each, every one printing a PASS or FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

import itertools
import random
import time
from fractions import Fraction

import pytest

from tropsatz.core import INF, exponents_upto, oplus, otimes
from tropsatz.duality import (
    Flavor, check_minplus_dual, check_minplus_primal, check_tropical_primal, minplus_alternative,
    tropical_alternative, verify_tropical_dual,
)
from tropsatz.game import build_game, min_credits, strict_credits, winners
from tropsatz.geometry import BottomFunction, LiftedPointSet, envelope, touches, touching_translation, translate
from tropsatz.linsys import MinPlusSystem
from tropsatz.macaulay import build_macaulay, check_macaulay_solution, embeds_rows, root_vector, system_bound
from tropsatz.nullsatz import (
    NonsingularCombination, NoRoot, Root, build_f_prime, decide_dual_R, decide_dual_Rinf,
    extract_primary, infinity_restrict, macaulay_solution, verify_primary,
)
from tropsatz.oracle import (
    candidate_vector, generate_fixture, max_neighbour_gap, oracle_game, oracle_minplus_linear,
    oracle_solve, oracle_tropical_dual, oracle_tropical_linear, random_system,
)
from tropsatz.poly import MinPlusPolynomial, TropicalPolynomial, chi, is_root_system, is_singular
from tropsatz.reduce import embed, minplus_to_tropical, tropical_to_minplus

from conftest import random_matrix, tp

LIMIT = 60.0


class Check:
    """Collects failures for one criterion and prints its verdict."""

    def __init__(self, num, title, printer=print):
        self.num, self.title, self.printer = num, title, printer
        self.failures = []
        self.notes = []
        self.t0 = time.perf_counter()

    def expect(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    def finish(self):
        dt = time.perf_counter() - self.t0
        if dt > LIMIT:
            self.failures.append(f"took {dt:.1f} s")
        verdict = "PASS" if not self.failures else "FAIL"
        extra = "; ".join(self.notes + self.failures[:3])
        self.printer(f"{verdict} criterion {self.num}: {self.title} [{dt:.1f} s] {extra}".rstrip())
        return not self.failures


@pytest.fixture
def check(capsys):
    made = []

    def make(num, title):
        def out(line):
            with capsys.disabled():
                print("\n" + line)
        c = Check(num, title, out)
        made.append(c)
        return c

    return make


def _run(c):
    assert c.finish(), c.failures


def test_criterion_1_intro(check):
    c = check(1, "intro example")
    F = generate_fixture("intro").polys
    c.expect(isinstance(decide_dual_R(F), NoRoot), "decide found a root")
    c.expect(system_bound(F, "R") == 6, "bound is not 6")
    c.expect(macaulay_solution(build_macaulay(F, 6)) is None, "M_6 solvable")
    cert = extract_primary(F, "R", 6)
    c.expect(isinstance(cert, NonsingularCombination) and verify_primary(F, cert), "certificate")
    c.expect(oracle_solve(F, "R") is None, "oracle found a root")
    _run(c)


def _decide_suite(c, rng, minplus, count, semiring):
    agree = 0
    for _ in range(count):
        F = random_system(rng, rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 2), minplus)
        r = decide_dual_R(F) if semiring == "R" else decide_dual_Rinf(F)
        o = oracle_solve(F, semiring)
        if isinstance(r, Root):
            ok = o is not None and c.expect(is_root_system(F, list(r.point)), f"bad root for {F}")
        else:
            ok = o is None
            if ok and r.N is not None:
                ok = c.expect(verify_primary(F, extract_primary(F, semiring)), f"certificate for {F}")
        agree += ok
    return agree


def test_criterion_2_finite_equivalence(check):
    c = check(2, "dual Nullstellensatz over R, random systems")
    rng = random.Random(2002)
    for minplus in (False, True):
        agree = _decide_suite(c, rng, minplus, 200, "R")
        c.notes.append(f"{'min-plus' if minplus else 'tropical'} {agree}/200")
        c.expect(agree == 200, "disagreement with the oracle")
    _run(c)


INF_FIXTURES = [
    ("inf_family(2,2)", generate_fixture("inf_family", {"n": 2, "d": 2}).polys),
    ("inf_family(2,2) min-plus", generate_fixture("inf_family", {"n": 2, "d": 2, "minplus": True}).polys),
    ("inf_family(3,2)", generate_fixture("inf_family", {"n": 3, "d": 2}).polys),
    ("0x", [tp(1, [(0, (1,))])]),
    ("x at inf", [tp(2, [(0, (0, 0)), (0, (0, 1))]), tp(2, [(0, (1, 0))])]),
    ("y at inf", [MinPlusPolynomial(tp(2, [(0, (0, 1))]), tp(2, [(1, (0, 2))])),
                  MinPlusPolynomial(tp(2, [(0, (1, 0))]), tp(2, [(0, (0, 0))]))]),
]


def _restrict_suite(rng, minplus, trials):
    tried = bad = 0
    for _ in range(trials):
        F = random_system(rng, rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 2), minplus)
        try:
            fp = build_f_prime(F)
        except ValueError:
            continue
        b = oracle_solve(list(fp.polys), "R")
        if b is None:
            continue
        tried += 1
        try:
            bad += not is_root_system(F, infinity_restrict(F, b))
        except RuntimeError:
            bad += 1
    return tried, bad


def test_criterion_3_infinity_equivalence(check):
    c = check(3, "dual Nullstellensatz over R-inf, random systems and fixtures; tropical restriction")
    rng = random.Random(3003)
    agree = _decide_suite(c, rng, False, 50, "Rinf") + _decide_suite(c, rng, True, 50, "Rinf")
    c.notes.append(f"random {agree}/100")
    c.expect(agree == 100, "disagreement with the oracle")
    for name, F in INF_FIXTURES:
        r = decide_dual_Rinf(F)
        o = oracle_solve(F, "Rinf")
        ok = (o is None) == isinstance(r, NoRoot)
        if isinstance(r, Root):
            ok = ok and is_root_system(F, list(r.point))
        c.expect(ok, f"fixture {name}")
    tried, bad = _restrict_suite(random.Random(5), False, 150)
    c.notes.append(f"tropical restrictions {tried - bad}/{tried}")
    c.expect(bad == 0 and tried > 0, "a tropical restriction failed")
    _run(c)


@pytest.mark.xfail(strict=True, reason="the F' restriction does not carry over to min-plus systems; see the decisions ledger")
def test_criterion_3_minplus_restriction(check):
    c = check("3 (min-plus restriction)", "restricted F' roots of min-plus systems are roots")
    tried, bad = _restrict_suite(random.Random(5), True, 150)
    c.notes.append(f"{tried - bad}/{tried} verify")
    c.expect(bad == 0, "restriction outputs that are not roots")
    _run(c)


LMP = [(2, 2), (3, 2), (2, 3)]


def test_criterion_4_lower_bound_R(check):
    c = check(4, "lower bound family over R")
    for (n, d), minplus in itertools.product(LMP, (False, True)):
        fx = generate_fixture("lmp", {"n": n, "d": d, "minplus": minplus})
        tag = f"{fx.name}{' min-plus' if minplus else ''}"
        c.expect(oracle_solve(fx.polys, "R") is None, f"{tag}: oracle root")
        small = build_macaulay(fx.polys, (d - 1) * (n - 1))
        c.expect(check_macaulay_solution(small, [fx.candidate(e) for e in small.index.exps]), f"{tag}: weights")
        N = system_bound(fx.polys, "R")
        if (n, d) == (3, 2) and not minplus:
            # M_4 is unsolvable and its rows are rows of M_N on its columns
            M4 = build_macaulay(fx.polys, 4)
            ok = macaulay_solution(M4) is None and embeds_rows(M4, build_macaulay(fx.polys, N))
        else:
            ok = macaulay_solution(build_macaulay(fx.polys, N)) is None
        c.expect(ok, f"{tag}: M_{N} solvable")
    _run(c)


def test_criterion_5_lower_bound_Rinf(check):
    c = check(5, "lower bound family over R-inf")
    for (n, d), minplus in itertools.product([(2, 2), (3, 2)], (False, True)):
        fx = generate_fixture("inf_family", {"n": n, "d": d, "minplus": minplus})
        tag = f"{fx.name}{' min-plus' if minplus else ''}"
        c.expect(oracle_solve(fx.polys, "Rinf") is None, f"{tag}: oracle root")
        M = build_macaulay(fx.polys, d ** (n - 1) - 1)
        y = [fx.candidate(e) for e in M.index.exps]
        c.expect(check_macaulay_solution(M, y, nonhomogeneous=True), f"{tag}: assignment")
    _run(c)


def test_criterion_6_nonlinear_solutions(check):
    c = check(6, "stepped pyramid and stripes")
    for name in ("stepped_pyramid", "stripes"):
        fx = generate_fixture(name)
        M = build_macaulay(fx.polys, 10)
        a = candidate_vector(fx, 10)
        c.expect(check_macaulay_solution(M, [a[e] for e in M.index.exps]), f"{name} at N=10")
    fx = generate_fixture("stripes")
    gaps = [max_neighbour_gap(candidate_vector(fx, N)) for N in (4, 6, 8, 10)]
    c.notes.append(f"stripe gaps {[int(g) for g in gaps]}")
    c.expect(gaps == [2 * (N - 2) for N in (4, 6, 8, 10)], "gaps do not grow with y")
    _run(c)


def _demands(S, flavor):
    if flavor is Flavor.FIN_ALL:
        return (lambda dead: not (dead & S)), (lambda rows: bool(rows & S))
    return (lambda dead: bool(S - dead)), (lambda rows: S <= rows)


def test_criterion_7_linear_duality(check):
    c = check(7, "linear duality exclusivity")
    rng = random.Random(7007)
    flip = {"column": "row", "row": "column", "draw": "draw"}
    for _ in range(500):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        A, B = random_matrix(rng, m, n), random_matrix(rng, m, n)
        S = {i for i in range(n) if rng.random() < 0.6}
        for fl in Flavor:
            var_ok, row_ok = _demands(S, fl)
            P = oracle_minplus_linear(A, B, var_ok=var_ok)
            D = oracle_minplus_linear(B.transpose(), A.transpose(), True, row_ok=row_ok)
            out = minplus_alternative(A, B, S, fl)
            good = check_minplus_primal if out.is_primal else check_minplus_dual
            c.expect((P is None) != (D is None) and out.is_primal == (P is not None)
                     and good(A, B, out.vector, S, fl), "min-plus alternative")
            P = oracle_tropical_linear(A, var_ok=var_ok)
            D = oracle_tropical_dual(A, row_ok=row_ok)
            out = tropical_alternative(A, S, fl)
            good = check_tropical_primal(A, out.vector, S, fl) if out.is_primal else \
                verify_tropical_dual(A, out.vector, S, fl)
            c.expect((P is None) != (D is None) and out.is_primal == (P is not None) and good,
                     "tropical alternative")
        w = winners(build_game(MinPlusSystem(A, B)))
        wt = winners(build_game(MinPlusSystem(B.transpose(), A.transpose())))
        c.expect(all(wt[("c" if k == "r" else "r", i)] == flip[v] for (k, i), v in w.items()), "transpose")
    _run(c)


def test_criterion_8_games(check):
    c = check(8, "game solver against positional enumeration")
    rng = random.Random(8008)
    for _ in range(500):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        G = build_game(MinPlusSystem(random_matrix(rng, m, n), random_matrix(rng, m, n)))
        truth = oracle_game(G)
        cred, win = min_credits(G), strict_credits(G)
        for kind, a, b in (("r", cred.rows, win.rows), ("c", cred.cols, win.cols)):
            for k in range(len(a)):
                c.expect((a[k] is not INF) == (truth[(kind, k)] != "row"), "non-losing region")
                c.expect((b[k] is not INF) == (truth[(kind, k)] == "column"), "winning region")
    _run(c)


GRID = [INF] + [Fraction(k, 2) for k in range(-4, 5)]


def test_criterion_9_reductions(check):
    c = check(9, "reductions between tropical and min-plus systems")
    rng = random.Random(9009)
    for _ in range(100):
        n = rng.randint(1, 2)
        F = random_system(rng, n, rng.randint(1, 3), rng.randint(1, 2))
        G = tropical_to_minplus(F)
        for a in itertools.product(GRID[::2], repeat=n):
            c.expect(is_root_system(F, list(a)) == is_root_system(G, list(a)), "tropical to min-plus")
        A = random_system(rng, n, rng.randint(1, 3), rng.randint(1, 2), minplus=True)
        T = minplus_to_tropical(A)
        for a in itertools.product(GRID[::2], repeat=n):
            c.expect(is_root_system(A, list(a)) == is_root_system(T, embed(a)), "min-plus to tropical")
        for b in itertools.product(GRID[::3], repeat=2 * n):
            if is_root_system(T, list(b)):
                c.expect(b[:n] == b[n:], "root off the diagonal")
    _run(c)


def _system_with_root(rng):
    """A random system together with a point built to be one of its roots."""
    n = rng.randint(1, 2)
    a = [Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(n)]
    exps = exponents_upto(n, 2)
    F = []
    for _ in range(rng.randint(1, 3)):
        chosen = rng.sample(exps, rng.randint(2, min(4, len(exps))))
        vals = {e: Fraction(rng.randint(-2, 2)) for e in chosen}
        # lift every coefficient so that the first two monomials tie at the minimum
        at = {e: vals[e] + sum(x * k for x, k in zip(a, e)) for e in chosen}
        low = min(at.values()) - 1
        for e in chosen[:2]:
            vals[e] += low - at[e]
        if rng.random() < 0.5:
            F.append(TropicalPolynomial(n, vals))
        else:
            F.append(MinPlusPolynomial(TropicalPolynomial(n, {chosen[0]: vals[chosen[0]]}),
                                       TropicalPolynomial(n, {e: vals[e] for e in chosen[1:]})))
    kinds = {type(p) for p in F}
    if len(kinds) > 1:
        F = [p for p in F if isinstance(p, type(F[0]))]
    return F, a


def test_criterion_10_algebraic_core(check):
    c = check(10, "semiring laws, singularity, easy direction, touching")
    rng = random.Random(1010)
    vals = [INF] + [Fraction(k, 3) for k in range(-6, 7)]
    for _ in range(1000):
        x, y, z = (rng.choice(vals) for _ in range(3))
        c.expect(oplus(x, oplus(y, z)) == oplus(oplus(x, y), z) and oplus(x, y) == oplus(y, x)
                 and oplus(x, x) == x and otimes(x, otimes(y, z)) == otimes(otimes(x, y), z)
                 and otimes(x, y) == otimes(y, x) and otimes(x, oplus(y, z)) == oplus(otimes(x, y), otimes(x, z)),
                 "semiring law")
    for _ in range(1000):
        n = rng.randint(1, 2)
        exps = exponents_upto(n, 2)
        f = TropicalPolynomial(n, {e: Fraction(rng.randint(-2, 2)) for e in rng.sample(exps, rng.randint(1, len(exps)))})
        a = [Fraction(rng.randint(-4, 4), 2) for _ in range(n)]
        c.expect(is_singular(chi(a, f.terms), f.phi()) == is_root_system([f], a), "singularity")
    for _ in range(1000):
        F, a = _system_with_root(rng)
        c.expect(is_root_system(F, a), "constructed root")
        M = build_macaulay(F, rng.randint(2, 4))
        c.expect(check_macaulay_solution(M, root_vector(M.index, a), nonhomogeneous=True), "easy direction")
    trials = 0
    while trials < 1000:
        n = rng.choice([1, 2])
        Ps = []
        for _ in range(rng.choice([1, 2])):
            pts = [(tuple(rng.randint(0, 2) for _ in range(n)), rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))]
            Ps.append(LiftedPointSet.build(n, pts, provenance=[(i,) for i in range(len(pts))]))
        P0 = envelope(Ps, n, prune_points=True)
        beta = BottomFunction(P0)
        top = int(max(sum(v) for v, _ in P0.points))
        for e in itertools.product(range(top + 1), repeat=n):
            b = beta(e)
            if b is None:
                continue
            j = rng.randrange(len(Ps))
            alpha = touching_translation(Ps[j], P0, (e, b), j=j)
            c.expect(touches(translate(Ps[j], alpha), P0, (e, b)), "touching")
            trials += 1
    c.notes.append(f"{trials} touching trials")
    _run(c)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
