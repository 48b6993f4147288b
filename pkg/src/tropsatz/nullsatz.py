"""Deciding tropical and min-plus systems through their Macaulay matrices.

The worst-case bounds on N are honoured as upper limits, but the drivers walk up
to them: a Macaulay system that is already unsolvable at a smaller degree
proves there is no root (every root gives a solution at every degree), and a
solution at a smaller degree counts only once a root extracted from it checks
out.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import INF, ExtValue, exp_add, format_value, parse_value, unit_exponent, zero_exponent
from .duality import Flavor, minplus_alternative, tropical_alternative
from .game import solve_nonstrict
from .geometry import BottomFunction, extract_root, system_envelope
from .linsys import MinPlusSystem, Relation, eq_to_ineq, lean_tropical_system
from .macaulay import MacaulaySystem, build_macaulay, system_bound
from .poly import (
    MinPlusPolynomial,
    TropicalPolynomial,
    chi,
    is_root_system,
    sing_set,
    system_num_vars,
)

log = logging.getLogger(__name__)

# Macaulay systems with more columns than this are not attempted by the drivers.
COLUMN_BUDGET = 4000


@dataclass(frozen=True)
class Root:
    point: tuple
    N: Optional[int] = None
    route: str = "facet"


@dataclass(frozen=True)
class NoRoot:
    N: Optional[int] = None
    note: str = ""


def _is_minplus(F) -> bool:
    kinds = {isinstance(p, MinPlusPolynomial) for p in F}
    if len(kinds) != 1:
        raise TypeError("mixed tropical and min-plus system")
    return kinds.pop()


def _schedule(F, bound: int) -> list:
    d = max(1, max(p.degree for p in F))
    out, N = [], d
    while N < bound:
        out.append(N)
        N *= 2
    out.append(bound)
    return out


def _columns(n: int, N: int) -> int:
    from math import comb

    return comb(N + n, n)


def macaulay_solution(M: MacaulaySystem, nonhomogeneous: bool = False) -> Optional[dict]:
    """A solution as exponent -> value: all finite, or (non-homogeneous) with y_0 = 0."""
    cols = len(M.index)
    if M.kind == "tropical":
        L, _ = lean_tropical_system(M.matrix())
    else:
        L = eq_to_ineq(M.system())
    S_fin = [M.index.const_col] if nonhomogeneous else range(cols)
    x = solve_nonstrict(MinPlusSystem(L.lhs, L.rhs, Relation.LEQ), S_fin=S_fin)
    if x is None:
        return None
    if nonhomogeneous:
        c = x[M.index.const_col]
        x = [v if v is INF else v - c for v in x]
    return dict(zip(M.index.exps, x))


def _try_extract(F, y: dict, cache: dict) -> Optional[list]:
    if "P0" not in cache:
        cache["P0"] = system_envelope(F)
        cache["beta"] = BottomFunction(cache["P0"])
    try:
        return extract_root(F, y, cache["P0"], beta=cache["beta"])
    except (RuntimeError, ValueError) as exc:
        log.debug("extraction failed: %s", exc)
        return None


def decide_dual_R(F: Sequence, max_columns: int = COLUMN_BUDGET) -> Root | NoRoot:
    """Finite roots: solve M_N over ℝ and read a root off the lower hull of P0."""
    if not F:
        raise ValueError("empty system")
    _is_minplus(F)
    n = system_num_vars(F)
    bound = system_bound(F, "R")
    cache: dict = {}
    for N in _schedule(F, bound):
        if _columns(n, N) > max_columns:
            raise RuntimeError(f"Macaulay system at N={N} exceeds the column budget")
        y = macaulay_solution(build_macaulay(F, N))
        if y is None:
            return NoRoot(N)
        root = _try_extract(F, y, cache)
        if root is not None:
            return Root(tuple(root), N)
    raise RuntimeError("solvable at the bound but no root extracted")


# -- the F′ construction ----------------------------------------------------


@dataclass(frozen=True)
class FPrimeSystem:
    polys: tuple
    provenance: tuple  # per polynomial: ((source index, coefficient, shift), ...)
    first: int  # index in F of the polynomial with a finite constant term
    delta: Fraction
    C: Fraction
    alpha: int
    K: int
    d_prime: int


def _phi_values(p) -> list:
    if isinstance(p, MinPlusPolynomial):
        return [v[0] for v in p.colored_phi().values()]
    return list(p.terms.values())


def _shifted(p, coef, shift):
    def one(f: TropicalPolynomial) -> dict:
        return {exp_add(e, shift): c + coef for e, c in f.terms.items()}

    if isinstance(p, MinPlusPolynomial):
        return one(p.lhs), one(p.rhs)
    return (one(p),)


def _tsum(n: int, sides: list, minplus: bool):
    out = [dict() for _ in sides[0]]
    for parts in sides:
        for acc, terms in zip(out, parts):
            for e, c in terms.items():
                if e in acc and acc[e] != c:
                    raise AssertionError("components overlap")
                acc[e] = min(c, acc.get(e, c))
    polys = [TropicalPolynomial(n, t) for t in out]
    return MinPlusPolynomial(*polys) if minplus else polys[0]


def constant_term(p) -> ExtValue:
    z = zero_exponent(p.num_vars)
    if isinstance(p, MinPlusPolynomial):
        return min(p.lhs.terms.get(z, INF), p.rhs.terms.get(z, INF))
    return p.terms.get(z, INF)


def joint_variation(F: Sequence) -> Fraction:
    """Δ after shifting every polynomial to minimum 0, floored at 1."""
    best = Fraction(0)
    for p in F:
        vals = _phi_values(p)
        if vals:
            best = max(best, max(vals) - min(vals))
    return max(best, Fraction(1))


def build_f_prime(F: Sequence) -> FPrimeSystem:
    minplus = _is_minplus(F)
    n = system_num_vars(F)
    k = len(F)
    first = next((i for i, p in enumerate(F) if constant_term(p) is not INF), None)
    if first is None:
        raise ValueError("no polynomial has a finite constant term")
    order = [first] + [i for i in range(k) if i != first]
    lows = {i: min(_phi_values(F[i])) for i in range(k)}
    delta = joint_variation(F)
    d = max(1, max(p.degree for p in F))
    m = min(n, k)
    C = 2 * delta * (4 * d) ** (2 * m + 2)
    alpha = (4 * d) ** (m + 2)
    zero = zero_exponent(n)
    base = _shifted(F[first], -lows[first], zero)
    polys = [_tsum(n, [base], minplus)]
    prov = [((first, -lows[first], zero),)]
    for i in order[1:]:
        for extra in [None] + list(range(n)):
            comps = [base]
            src = [(first, -lows[first], zero)]
            for j in range(n):
                c = -C - lows[i] - (1 if j == extra else 0)
                J = unit_exponent(n, j, alpha)
                comps.append(_shifted(F[i], c, J))
                src.append((i, c, J))
            polys.append(_tsum(n, comps, minplus))
            prov.append(tuple(src))
    K = len(polys)
    assert K == (n + 1) * (k - 1) + 1
    return FPrimeSystem(tuple(polys), tuple(prov), first, delta, C, alpha, K, alpha + d)


def _domain(p) -> list:
    if isinstance(p, MinPlusPolynomial):
        return list(p.colored_phi())
    return list(p.terms)


def _phi(p) -> dict:
    if isinstance(p, MinPlusPolynomial):
        return {e: v[0] for e, v in p.colored_phi().items()}
    return dict(p.terms)


@dataclass
class RestrictionTrace:
    sets: list = field(default_factory=list)
    used: list = field(default_factory=list)
    claim_violations: list = field(default_factory=list)


def infinity_restrict(F: Sequence, a: Sequence, trace: Optional[RestrictionTrace] = None) -> list:
    """From a finite root a of F′ to a root of F, sending unneeded coordinates to ∞."""
    n = system_num_vars(F)
    a = [Fraction(v) for v in a]
    first = next((i for i, p in enumerate(F) if constant_term(p) is not INF), None)
    if first is None:
        raise ValueError("no polynomial has a finite constant term")
    if trace is None:
        trace = RestrictionTrace()
    delta = joint_variation(F)
    d = max(1, max(p.degree for p in F))

    def sing(p):
        ph = _phi(p)
        return sing_set(chi(a, ph), ph).points

    def support(points):
        return {j for e in points for j in range(n) if e[j] != 0}

    def inside(e, S):
        return all(e[j] == 0 for j in range(n) if j not in S)

    S = support(sing(F[first]))
    trace.sets.append(set(S))
    used = {first}
    while True:
        _check_claim(a, S, delta, d, len(trace.sets) - 1, trace)
        nxt = None
        for i, p in enumerate(F):
            if i in used:
                continue
            pts = sing(p)
            if len(pts) > sum(1 for e in pts if inside(e, S)) and any(inside(e, S) for e in _domain(p)):
                nxt = (i, pts)
                break
        if nxt is None:
            break
        i, pts = nxt
        used.add(i)
        trace.used.append(i)
        S = S | support(pts)
        trace.sets.append(set(S))
    out = [v if j in S else INF for j, v in enumerate(a)]
    if not is_root_system(F, out):
        raise RuntimeError(f"restriction to {sorted(S)} is not a root of F")
    return out


def _check_claim(a, S, delta, d, l, trace):
    """A small b_j forces a large b_j′ in the same set (b = −a)."""
    b = {j: -a[j] for j in S}
    for j, bj in b.items():
        if bj <= -2 * delta * (4 * d) ** l:
            if not any(b[t] >= abs(bj) / (4 * d) ** (l + 1) for t in S):
                trace.claim_violations.append((l, j))
                log.warning("claim bound violated at step %d for coordinate %d", l, j)


# -- the ℝ∞ driver ----------------------------------------------------------


def _restricted(F: Sequence, dead: set, n: int):
    """F with the dead variables at ∞, over the remaining variables; None if impossible."""
    alive = [j for j in range(n) if j not in dead]
    nn = len(alive)

    def cut(f: TropicalPolynomial) -> TropicalPolynomial:
        terms = {tuple(e[j] for j in alive): c for e, c in f.terms.items() if not any(e[j] for j in dead)}
        doubled = frozenset(tuple(e[j] for j in alive) for e in f.doubled if not any(e[j] for j in dead))
        return TropicalPolynomial(nn, terms, doubled)

    out = []
    for p in F:
        if isinstance(p, MinPlusPolynomial):
            lhs, rhs = cut(p.lhs), cut(p.rhs)
            if not lhs.terms and not rhs.terms:
                continue
            if not lhs.terms or not rhs.terms:
                return None
            out.append(MinPlusPolynomial(lhs, rhs))
        else:
            f = cut(p)
            if not f.terms:
                continue
            out.append(f)
    return out, alive


def decide_by_restriction(F: Sequence, max_columns: int = COLUMN_BUDGET) -> Root | NoRoot:
    """Try every set of coordinates at ∞ and look for a finite root of the rest."""
    n = system_num_vars(F)
    for r in range(n + 1):
        for dead in itertools.combinations(range(n), r):
            got = _restricted(F, set(dead), n)
            if got is None:
                continue
            G, alive = got
            point = [INF] * n
            if not G:
                for j in alive:
                    point[j] = Fraction(0)
                return Root(tuple(point), None, "restriction")
            if not alive:
                if is_root_system(F, point):
                    return Root(tuple(point), None, "restriction")
                continue
            res = decide_dual_R(G, max_columns)
            if isinstance(res, Root):
                for j, v in zip(alive, res.point):
                    point[j] = v
                assert is_root_system(F, point)
                return Root(tuple(point), None, "restriction")
    return NoRoot(None, "no restriction has a finite root")


def decide_dual_Rinf(F: Sequence, max_columns: int = COLUMN_BUDGET, use_f_prime: bool = False) -> Root | NoRoot:
    """Roots over ℝ∞ from the non-homogeneous Macaulay system.

    After a solvable degree the driver tries the facet extraction, then
    (only with ``use_f_prime``) the F′ construction, then an exact search over
    the coordinates that are ∞. The F′ system has degree above (4d)^3 and
    huge coefficients, so its Macaulay game is out of reach for the default path.
    """
    if not F:
        raise ValueError("empty system")
    _is_minplus(F)
    n = system_num_vars(F)
    if all(constant_term(p) is INF for p in F):
        return Root(tuple([INF] * n), 0, "infinite")
    bound = system_bound(F, "Rinf")
    cache: dict = {}
    decided = None
    for N in _schedule(F, bound):
        if _columns(n, N) > max_columns:
            break
        y = macaulay_solution(build_macaulay(F, N), nonhomogeneous=True)
        if y is None:
            return NoRoot(N)
        if decided is not None:
            continue
        root = _try_extract(F, y, cache)
        if root is not None:
            return Root(tuple(root), N, "facet")
        if use_f_prime:
            root = _f_prime_route(F, max_columns)
            if root is not None:
                return Root(tuple(root), N, "f_prime")
        decided = decide_by_restriction(F, max_columns)
        if isinstance(decided, Root):
            return Root(decided.point, N, decided.route)
    if decided is None:
        decided = decide_by_restriction(F, max_columns)
    if isinstance(decided, Root):
        return decided
    return NoRoot(None, "no root; no unsolvable Macaulay degree within the column budget")


def _f_prime_route(F: Sequence, max_columns: int) -> Optional[list]:
    try:
        fp = build_f_prime(F)
    except ValueError:
        return None
    n = system_num_vars(F)
    if _columns(n, fp.d_prime) > max_columns:
        return None
    try:
        res = decide_dual_R(list(fp.polys), max_columns)
    except RuntimeError:
        return None
    if not isinstance(res, Root):
        return None
    try:
        return infinity_restrict(F, res.point)
    except RuntimeError as exc:
        log.warning("F' root did not restrict: %s", exc)
        return None


def decide(F: Sequence, semiring: str = "R", max_columns: int = COLUMN_BUDGET, **kw) -> Root | NoRoot:
    if semiring == "R":
        return decide_dual_R(F, max_columns)
    if semiring == "Rinf":
        return decide_dual_Rinf(F, max_columns, **kw)
    raise ValueError(f"unknown semiring {semiring!r}")


# -- primary certificates ---------------------------------------------------


@dataclass(frozen=True)
class NonsingularCombination:
    """⊕ over parts (poly j, coefficient c, shift J) of c ⊙ x^J ⊙ f_j."""

    parts: tuple
    semiring: str = "R"
    N: Optional[int] = None

    def monomials(self, F: Sequence) -> dict:
        """Exponent -> list of (coefficient, part index), repeated monomials counted twice."""
        out: dict = {}
        for t, (j, c, J) in enumerate(self.parts):
            f = F[j]
            for e, v in f.terms.items():
                I = exp_add(J, e)
                times = 2 if e in f.doubled else 1
                out.setdefault(I, []).extend([(v + c, t)] * times)
        return out


@dataclass(frozen=True)
class DominatedCombination:
    """Parts (poly j, swapped, coefficient c, shift J); swapped parts contribute (g_j, f_j)."""

    parts: tuple
    semiring: str = "R"
    N: Optional[int] = None

    def pair(self, F: Sequence) -> tuple:
        f: dict = {}
        g: dict = {}
        for j, swapped, c, J in self.parts:
            left, right = (F[j].rhs, F[j].lhs) if swapped else (F[j].lhs, F[j].rhs)
            for side, acc in ((left, f), (right, g)):
                for e, v in side.terms.items():
                    I = exp_add(J, e)
                    acc[I] = min(acc.get(I, INF), v + c)
        return f, g


def _certificate_degrees(F, cert) -> int:
    if isinstance(cert, NonsingularCombination):
        return max(sum(J) + F[j].degree for j, _, J in cert.parts)
    return max(sum(J) + F[j].degree for j, _, _, J in cert.parts)


def verify_primary(F: Sequence, cert) -> bool:
    if not cert.parts:
        return False
    try:
        for part in cert.parts:
            j, J = part[0], part[-1]
            if not 0 <= j < len(F) or len(J) != system_num_vars(F) or any(v < 0 for v in J):
                return False
    except TypeError:
        return False
    if cert.N is not None and _certificate_degrees(F, cert) > cert.N:
        return False
    n = system_num_vars(F)
    if isinstance(cert, NonsingularCombination):
        if any(isinstance(p, MinPlusPolynomial) for p in F):
            return False
        mons = cert.monomials(F)
        owners = set()
        for I, entries in mons.items():
            entries = sorted(entries)
            if len(entries) > 1 and entries[0][0] == entries[1][0]:
                return False
            if entries[0][1] in owners:
                return False
            owners.add(entries[0][1])
        if not mons:
            return False
        if cert.semiring == "Rinf" and zero_exponent(n) not in mons:
            return False
        return True
    if isinstance(cert, DominatedCombination):
        if not all(isinstance(p, MinPlusPolynomial) for p in F):
            return False
        f, g = cert.pair(F)
        keys = set(f) | set(g)
        if not keys:
            return False
        for I in keys:
            if not f.get(I, INF) > g.get(I, INF):
                return False
        if cert.semiring == "Rinf" and g.get(zero_exponent(n), INF) is INF:
            return False
        return True
    return False


def _unsolvable_degree(F, semiring: str, max_columns: int) -> Optional[int]:
    n = system_num_vars(F)
    bound = system_bound(F, semiring)
    for N in _schedule(F, bound):
        if _columns(n, N) > max_columns:
            return None
        y = macaulay_solution(build_macaulay(F, N), nonhomogeneous=(semiring == "Rinf"))
        if y is None:
            return N
    return None


def extract_primary(F: Sequence, semiring: str = "R", N: Optional[int] = None,
                    max_columns: int = COLUMN_BUDGET):
    """A certificate of no root, read off the dual of an unsolvable Macaulay system."""
    minplus = _is_minplus(F)
    if not minplus and any(p.doubled for p in F):
        raise ValueError("no nonsingular combination for polynomials with repeated monomials")
    if N is None:
        N = _unsolvable_degree(F, semiring, max_columns)
        if N is None:
            raise ValueError("no unsolvable Macaulay degree found; the system may have a root")
    M = build_macaulay(F, N)
    S = [M.index.const_col] if semiring == "Rinf" else list(range(len(M.index)))
    if not minplus:
        out = tropical_alternative(M.matrix(), S, Flavor.FIN_ALL)
        if out.is_primal:
            raise ValueError(f"the Macaulay system at N={N} is solvable")
        parts = tuple(
            (j, z, J) for (j, J), z in zip(M.row_labels, out.vector) if z is not INF
        )
        cert = NonsingularCombination(parts, semiring, N)
    else:
        E = eq_to_ineq(M.system())
        out = minplus_alternative(E.lhs, E.rhs, S, Flavor.FIN_ALL)
        if out.is_primal:
            raise ValueError(f"the Macaulay system at N={N} is solvable")
        R = len(M.row_labels)
        parts = []
        for t, w in enumerate(out.vector):
            if w is INF:
                continue
            j, J = M.row_labels[t % R]
            parts.append((j, t >= R, w, J))
        cert = DominatedCombination(tuple(parts), semiring, N)
    if not verify_primary(F, cert):
        raise AssertionError("certificate from the dual does not verify")
    return cert


# -- JSON -------------------------------------------------------------------


def certificate_to_json(cert) -> dict:
    if isinstance(cert, Root):
        return {"kind": "root", "point": [format_value(v) for v in cert.point], "N": cert.N}
    if isinstance(cert, NonsingularCombination):
        return {
            "kind": "nonsingular",
            "semiring": cert.semiring,
            "N": cert.N,
            "parts": [{"poly": j, "coef": format_value(c), "shift": list(J)} for j, c, J in cert.parts],
        }
    if isinstance(cert, DominatedCombination):
        return {
            "kind": "dominated",
            "semiring": cert.semiring,
            "N": cert.N,
            "parts": [
                {"poly": j, "swapped": bool(s), "coef": format_value(c), "shift": list(J)}
                for j, s, c, J in cert.parts
            ],
        }
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def certificate_from_json(data) -> object:
    if isinstance(data, str):
        data = json.loads(data)
    kind = data["kind"]
    if kind == "root":
        return Root(tuple(parse_value(v) for v in data["point"]), data.get("N"))
    parts = data["parts"]
    if kind == "nonsingular":
        return NonsingularCombination(
            tuple((p["poly"], parse_value(p["coef"]), tuple(p["shift"])) for p in parts),
            data.get("semiring", "R"),
            data.get("N"),
        )
    if kind == "dominated":
        return DominatedCombination(
            tuple((p["poly"], bool(p["swapped"]), parse_value(p["coef"]), tuple(p["shift"])) for p in parts),
            data.get("semiring", "R"),
            data.get("N"),
        )
    raise ValueError(f"unknown certificate kind {kind!r}")
