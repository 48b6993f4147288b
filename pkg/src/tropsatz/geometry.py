"""Extended Newton polytopes, their lower hulls and root extraction.

A polytope is kept as a finite set of generators (v, h) with v ∈ ℚⁿ and a
height h; the set it stands for is their convex hull plus everything straight
above it. All computations are exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .core import INF, ExtValue, Exponent
from .lp import lp_free, rank, simplex, solve_linear
from .poly import MinPlusPolynomial, TropicalPolynomial, is_root_system, sing_set, system_num_vars

log = logging.getLogger(__name__)

Point = tuple


def _frac_point(v) -> tuple:
    return tuple(Fraction(c) for c in v)


@dataclass(frozen=True)
class LiftedPointSet:
    """Generators (v, h) of conv(...) + upward rays, deduplicated.

    colors holds a frozenset of "black"/"white" per generator for min-plus
    polynomials. provenance records, for generators of a Minkowski sum, the
    generator index picked from every summand.
    """

    n: int
    points: tuple
    colors: Optional[tuple] = None
    provenance: Optional[tuple] = None
    parts: tuple = ()
    factor: int = 1

    @classmethod
    def build(cls, n: int, items: Iterable, colors=None, provenance=None, **kw) -> "LiftedPointSet":
        pts, cols, prov = [], [], []
        where = {}
        colors = list(colors) if colors is not None else None
        provenance = list(provenance) if provenance is not None else None
        for k, (v, h) in enumerate(items):
            v = _frac_point(v)
            if len(v) != n:
                raise ValueError(f"point {v} is not in dimension {n}")
            key = (v, Fraction(h))
            if key in where:
                if colors is not None:
                    t = where[key]
                    cols[t] = cols[t] | colors[k]
                continue
            where[key] = len(pts)
            pts.append(key)
            if colors is not None:
                cols.append(frozenset(colors[k]))
            if provenance is not None:
                prov.append(tuple(provenance[k]))
        return cls(
            n,
            tuple(pts),
            tuple(cols) if colors is not None else None,
            tuple(prov) if provenance is not None else None,
            **kw,
        )

    def __len__(self):
        return len(self.points)

    def subset(self, idx: Sequence[int]) -> "LiftedPointSet":
        return LiftedPointSet(
            self.n,
            tuple(self.points[i] for i in idx),
            tuple(self.colors[i] for i in idx) if self.colors is not None else None,
            tuple(self.provenance[i] for i in idx) if self.provenance is not None else None,
            self.parts,
            self.factor,
        )

    def dump(self) -> str:
        """One generator per line: coordinates then height, for plotting tools."""
        return "\n".join(" ".join(str(c) for c in v) + f" {h}" for v, h in self.points)


@dataclass(frozen=True)
class Face:
    indices: tuple
    points: tuple
    dim: int


def newton(f) -> LiftedPointSet:
    """The generators (I, φ_f(I)); min-plus polynomials get colored points."""
    if isinstance(f, TropicalPolynomial):
        items = sorted(f.terms.items())
        return LiftedPointSet.build(f.num_vars, items, provenance=[(k,) for k in range(len(items))])
    if isinstance(f, MinPlusPolynomial):
        cphi = f.colored_phi()
        items, colors = [], []
        for e in sorted(cphi):
            v, black, white = cphi[e]
            items.append((e, v))
            colors.append(frozenset(c for c, on in (("black", black), ("white", white)) if on))
        return LiftedPointSet.build(f.num_vars, items, colors, [(k,) for k in range(len(items))])
    raise TypeError(f"not a polynomial: {type(f).__name__}")


def minkowski(P: LiftedPointSet, Q: LiftedPointSet) -> LiftedPointSet:
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    pp = P.provenance or tuple((k,) for k in range(len(P)))
    qp = Q.provenance or tuple((k,) for k in range(len(Q)))
    items, prov = [], []
    for (v, h), a in zip(P.points, pp):
        for (w, g), b in zip(Q.points, qp):
            items.append((tuple(x + y for x, y in zip(v, w)), h + g))
            prov.append(a + b)
    return LiftedPointSet.build(P.n, items, provenance=prov)


def dilate(P: LiftedPointSet, k: int) -> LiftedPointSet:
    return LiftedPointSet.build(
        P.n, [(tuple(k * c for c in v), k * h) for v, h in P.points], provenance=P.provenance
    )


def prune(P: LiftedPointSet) -> LiftedPointSet:
    """Keep only the vertices of the lifted polytope."""
    keep = list(range(len(P)))
    for i in range(len(P)):
        others = [t for t in keep if t != i]
        if not others:
            continue
        v, h = P.points[i]
        b = _bottom_lp([P.points[t] for t in others], v)
        if b is not None and b.value <= h:
            keep = others
    return P.subset(keep)


def envelope(Ps: Sequence[LiftedPointSet], n: int, prune_points: bool = False) -> LiftedPointSet:
    """(n+2)·(P₁ + … + P_k); with prune_points only vertices are kept along the way."""
    if not Ps:
        raise ValueError("envelope of no polytopes")
    def fresh(P):
        return LiftedPointSet(n, P.points, None, tuple((k,) for k in range(len(P))))

    acc = fresh(Ps[0])
    if prune_points:
        acc = prune(acc)
    for P in Ps[1:]:
        acc = minkowski(acc, fresh(P))
        if prune_points:
            acc = prune(acc)
    out = dilate(acc, n + 2)
    return LiftedPointSet(out.n, out.points, None, out.provenance, tuple(Ps), n + 2)


def _bottom_lp(points: Sequence, v):
    """The LP behind the bottom: min Σλh with Σλv = v, Σλ = 1, λ ≥ 0."""
    n = len(v)
    M = [[p[0][j] for p in points] for j in range(n)] + [[1] * len(points)]
    res = simplex([p[1] for p in points], M, list(v) + [1])
    return res if res.status == "optimal" else None


class BottomFunction:
    """β_P on rational points, exact.

    Every LP solved leaves behind a simplex of generators with the supporting
    plane it lies on. A later point inside such a simplex gets its value from
    the plane without another LP.
    """

    def __init__(self, P: LiftedPointSet):
        self.P = P
        lowest = {}
        for v, h in P.points:
            if v not in lowest or h < lowest[v]:
                lowest[v] = h
        self.gens = sorted(lowest.items())
        self.n = P.n
        self._cache: dict = {}
        self._simplices: list = []

    def _from_simplices(self, I):
        pt = list(I) + [1]
        for inv, s, c in self._simplices:
            if all(sum(r * x for r, x in zip(row, pt)) >= 0 for row in inv):
                return sum(a * b for a, b in zip(s, I)) + c
        return None

    def _solve(self, I):
        res = _bottom_lp(self.gens, I)
        if res is None:
            return None
        s, c = res.duals[: self.n], res.duals[self.n]
        if len(res.basis) == self.n + 1:
            cols = [list(self.gens[b][0]) + [1] for b in res.basis]
            rows = [[cols[k][j] for k in range(self.n + 1)] for j in range(self.n + 1)]
            inv = _inverse(rows)
            if inv is not None:
                self._simplices.append((inv, s, c))
        return res.value

    def value(self, I) -> Optional[Fraction]:
        I = _frac_point(I)
        if I in self._cache:
            return self._cache[I]
        v = self._from_simplices(I) if self._simplices else None
        if v is None:
            v = self._solve(I)
        self._cache[I] = v
        return v

    __call__ = value

    def values(self, points: Iterable) -> dict:
        """Exponent -> β for every point where β is defined."""
        out = {}
        for e in points:
            b = self.value(e)
            if b is not None:
                out[e] = b
        return out

    def plane(self, I) -> Optional[tuple]:
        """A supporting plane (s, c) through (I, β(I))."""
        res = _bottom_lp(self.gens, _frac_point(I))
        if res is None:
            return None
        return tuple(res.duals[: self.n]), res.duals[self.n]


def _inverse(rows):
    n = len(rows)
    inv = []
    for k in range(n):
        col = solve_linear(rows, [int(k == t) for t in range(n)])
        if col is None:
            return None
        inv.append(col)
    # inv holds columns of the inverse; turn them into rows
    return [[inv[k][j] for k in range(n)] for j in range(n)]


def bottom(P: LiftedPointSet, I) -> Optional[Fraction]:
    res = _bottom_lp(P.points, _frac_point(I))
    return res.value if res is not None else None


def _affine_dim(points: Sequence) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _lifted(p) -> tuple:
    return tuple(p[0]) + (p[1],)


def minimal_face(P: LiftedPointSet, q) -> Face:
    """The smallest face of P through the bottom point q = (v, h)."""
    v, h = _frac_point(q[0]), Fraction(q[1])
    res = _bottom_lp(P.points, v)
    if res is None or res.value != h:
        raise ValueError(f"({v}, {h}) is not on the bottom")
    s, c = res.duals[: P.n], res.duals[P.n]
    cand = [i for i, (w, g) in enumerate(P.points) if sum(a * b for a, b in zip(s, w)) + c == g]
    pts = [P.points[i] for i in cand]
    M = [[p[0][j] for p in pts] for j in range(P.n)] + [[p[1] for p in pts]] + [[1] * len(pts)]
    rhs = list(v) + [h, 1]
    support: set = set()
    for t, i in enumerate(cand):
        if i in support:
            continue
        r = simplex([-int(u == t) for u in range(len(pts))], M, rhs)
        if r.status == "optimal":
            support.update(cand[u] for u, lam in enumerate(r.x) if lam > 0)
    idx = tuple(sorted(support))
    gens = tuple(P.points[i] for i in idx)
    return Face(idx, gens, _affine_dim([_lifted(p) for p in gens]))


def support_hyperplane(P: LiftedPointSet, Q: Face) -> tuple:
    """A plane ⟨s,v⟩ + c below every generator and through all of Q.

    The slope is the lexicographically smallest one with |s_j| ≤ B, where B is
    twice the largest slope of a plane found by the bottom LP (at least 1).
    Without such a box the smallest slope can be unbounded at a vertex.
    """
    n = P.n
    if not Q.points:
        raise ValueError("empty face")
    centre = tuple(sum(p[0][j] for p in Q.points) / len(Q.points) for j in range(n))
    res = _bottom_lp(P.points, centre)
    if res is None:
        raise ValueError("face outside the polytope")
    s0 = res.duals[:n]
    B = max([Fraction(1)] + [2 * abs(x) for x in s0])
    A_ub = [list(v) + [1] for v, h in P.points]
    b_ub = [h for v, h in P.points]
    for j in range(n):
        e = [0] * (n + 1)
        e[j] = 1
        A_ub.append(e)
        b_ub.append(B)
        A_ub.append([-x for x in e])
        b_ub.append(B)
    A_eq = [list(v) + [1] for v, h in Q.points]
    b_eq = [h for v, h in Q.points]
    fixed = []
    for j in range(n):
        goal = [0] * (n + 1)
        goal[j] = 1
        eqs = A_eq + [[int(t == u) for u in range(n + 1)] for t in range(j)]
        r = lp_free(goal, A_ub, b_ub, eqs, b_eq + fixed)
        if r.status != "optimal":
            raise ValueError("the face has no non-vertical supporting plane")
        fixed.append(r.value)
    r = lp_free([0] * n + [1], A_ub, b_ub, A_eq + [[int(t == u) for u in range(n + 1)] for t in range(n)],
                b_eq + fixed)
    if r.status != "optimal":
        raise ValueError("the face has no non-vertical supporting plane")
    s = tuple(fixed)
    c = r.x[n]
    for v, h in P.points:
        assert sum(a * b for a, b in zip(s, v)) + c <= h
    for v, h in Q.points:
        assert sum(a * b for a, b in zip(s, v)) + c == h
    return s, c


def system_envelope(F: Sequence) -> LiftedPointSet:
    n = system_num_vars(F)
    return envelope([newton(f) for f in F], n, prune_points=True)


def extract_root(F: Sequence, a: Mapping[Exponent, ExtValue], P0: Optional[LiftedPointSet] = None,
                 colored: Optional[bool] = None, beta: Optional[BottomFunction] = None) -> list:
    """Turn a Macaulay solution a (exponent -> value) into a root of F.

    The singular points of −a against the bottom of P0 are ranked by the
    dimension of their minimal face, highest first, then by exponent; the
    slope of a supporting plane of that face, negated, is the root.
    """
    if colored is None:
        colored = any(isinstance(f, MinPlusPolynomial) for f in F)
    if colored != all(isinstance(f, MinPlusPolynomial) for f in F):
        raise ValueError("colored flag does not match the system")
    if P0 is None:
        P0 = system_envelope(F)
    if beta is None:
        beta = BottomFunction(P0)
    phi = {e: -y for e, y in a.items() if y is not INF}
    psi = beta.values(phi)
    S = sing_set(phi, psi)
    if not S.points:
        raise ValueError("the solution and the bottom share no finite point")
    faces = []
    for e in S.points:
        face = minimal_face(P0, (e, psi[e]))
        faces.append((-face.dim, e, face))
    faces.sort(key=lambda t: (t[0], t[1]))
    tried = []
    for _, e, face in faces:
        try:
            s, c = support_hyperplane(P0, face)
        except ValueError:
            continue
        root = [-x for x in s]
        if is_root_system(F, root):
            if tried:
                log.info("root found at singular point %s after %d candidates", e, len(tried))
            return root
        tried.append((e, root))
    raise RuntimeError(f"no singular face yields a root; tried {tried}")


# -- touching translations -------------------------------------------------


def _flat(P: LiftedPointSet) -> LiftedPointSet:
    return LiftedPointSet.build(P.n, [(v, 0) for v, _ in P.points])


def _in_face(face: Face, q: tuple) -> bool:
    pts = face.points
    M = [[_lifted(p)[j] for p in pts] for j in range(len(q))] + [[1] * len(pts)]
    return simplex([0] * len(pts), M, list(q) + [1]).status == "optimal"


def touches(points: Sequence, P0: LiftedPointSet, x) -> bool:
    """Does the finite set of (v, h) points touch P0 at the bottom point x?"""
    xv, xh = _frac_point(x[0]), Fraction(x[1])
    beta = BottomFunction(P0)
    flat = _flat(P0)
    xflat = None
    found = False
    for v, h in points:
        v, h = _frac_point(v), Fraction(h)
        b = beta(v)
        if b is None or b > h:
            return False
        if (v, h) == (xv, xh):
            found = True
        if h == b:
            if not _in_face(minimal_face(P0, (v, h)), xv + (xh,)):
                return False
        else:
            face = minimal_face(flat, (v, 0))
            if len(face.points) != len(flat.points):
                if xflat is None:
                    xflat = xv + (Fraction(0),)
                if not _in_face(face, xflat):
                    return False
    return found


def _decompose(P0: LiftedPointSet, g: int) -> list:
    """Generators of each summand adding up to generator g of P0, divided by the factor."""
    prov = P0.provenance[g]
    return [P.points[i] for P, i in zip(P0.parts, prov)]


def touching_translation(Pj: LiftedPointSet, P0: LiftedPointSet, x, j: Optional[int] = None) -> tuple:
    """α with Pj + α touching P0 at the bottom point x, following the discretization argument.

    P0 must come from envelope(); its provenance locates each summand inside a
    vertex. The result is the (n+1)-vector α.
    """
    if not P0.parts or P0.provenance is None:
        raise ValueError("P0 must be built by envelope()")
    if j is None:
        j = next((t for t, P in enumerate(P0.parts) if P == Pj), None)
        if j is None:
            raise ValueError("Pj is not a summand of P0")
    n, k = P0.n, P0.factor
    xv, xh = _frac_point(x[0]), Fraction(x[1])
    xl = xv + (xh,)
    V = prune(P0)
    Q0 = minimal_face(V, (xv, xh))
    if Q0.dim == 0:
        g = Q0.indices[0]
        alpha_p = tuple(c - c / k for c in xl)
    else:
        pts = [_lifted(p) for p in Q0.points]
        M = [[p[t] for p in pts] for t in range(n + 1)] + [[1] * len(pts)]
        res = simplex([0] * len(pts), M, list(xl) + [1])
        w = res.x
        t1 = max(range(len(pts)), key=lambda t: (w[t], -t))
        g = Q0.indices[t1]
        v1 = pts[t1]
        alpha_p = tuple(a - b / k for a, b in zip(xl, v1))
    parts = _decompose(V, g)
    alpha = list(alpha_p)
    for t, (v, h) in enumerate(parts):
        if t != j:
            for u, c in enumerate(tuple(v) + (h,)):
                alpha[u] += c
    return tuple(alpha)


def translate(P: LiftedPointSet, alpha: Sequence) -> list:
    n = P.n
    return [(tuple(a + b for a, b in zip(v, alpha[:n])), h + alpha[n]) for v, h in P.points]


def discretize(vertices: Sequence, x) -> tuple:
    """For x inside (d+2)·conv(vertices) in ℝ^d: a shift α and homothety centre y.

    x becomes a vertex of conv(vertices) + α and the homothety with ratio d+2
    about y maps that translate onto the dilated polytope.
    """
    d = len(x)
    k = d + 2
    big = [tuple(k * Fraction(c) for c in v) for v in vertices]
    M = [[p[t] for p in big] for t in range(d)] + [[1] * len(big)]
    res = simplex([0] * len(big), M, list(x) + [1])
    if res.status != "optimal":
        raise ValueError("x lies outside the dilated polytope")
    w = res.x
    t1 = max(range(len(big)), key=lambda t: (w[t], -t))
    w1 = w[t1]
    xf = _frac_point(x)
    alpha = tuple(a - b / k for a, b in zip(xf, big[t1]))
    if w1 == 1:
        return alpha, xf
    vp = tuple(sum(w[t] * big[t][u] for t in range(len(big)) if t != t1) / (1 - w1) for u in range(d))
    ratio = (1 - w1) / (w1 * (d + 1))
    y = tuple(a + (b - a) * ratio for a, b in zip(xf, vp))
    return alpha, y
