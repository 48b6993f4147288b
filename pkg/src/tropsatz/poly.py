"""Tropical and min-plus polynomials, root predicates and singularity sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import INF, ExtValue, Exponent, degree, dot, ext, exponent, format_value


@dataclass(frozen=True)
class TropicalPolynomial:
    """min over terms of c_I + ⟨x, I⟩.

    ``terms`` maps exponents to finite coefficients; an absent exponent has
    coefficient ∞. ``doubled`` lists exponents whose minimal coefficient was
    supplied twice (this happens in the min-plus to tropical translation);
    such a term counts as two monomials when it attains the minimum.
    """

    num_vars: int
    terms: Mapping[Exponent, Fraction]
    doubled: frozenset = field(default=frozenset())

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = exponent(e)
            if len(e) != self.num_vars:
                raise ValueError(f"exponent {e} has wrong length for {self.num_vars} variables")
            c = ext(c)
            if c is INF:
                continue
            clean[e] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "doubled", frozenset(e for e in self.doubled if e in clean))

    @classmethod
    def from_terms(cls, num_vars: int, pairs: Iterable[tuple], merge: bool = False) -> "TropicalPolynomial":
        """Build from (coef, exponent) pairs.

        With ``merge`` repeated exponents keep the smaller coefficient and a
        tie of the smallest is recorded in ``doubled``; otherwise repeats are an error.
        """
        terms: dict = {}
        count: dict = {}
        for c, e in pairs:
            c = ext(c)
            e = exponent(e)
            if c is INF:
                continue
            if e in terms:
                if not merge:
                    raise ValueError(f"repeated exponent {e}")
                if c < terms[e]:
                    terms[e], count[e] = c, 1
                elif c == terms[e]:
                    count[e] += 1
            else:
                terms[e], count[e] = c, 1
        return cls(num_vars, terms, frozenset(e for e, k in count.items() if k > 1))

    @property
    def degree(self) -> int:
        return max((degree(e) for e in self.terms), default=0)

    def phi(self) -> dict:
        """The coefficient function as an explicit map."""
        return dict(self.terms)

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "inf"
        return " + ".join(_term_str(c, e) for e, c in self.terms.items())


def _term_str(c, e) -> str:
    mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
    return f"{format_value(c)}*{mono}" if mono else format_value(c)


@dataclass(frozen=True)
class MinPlusPolynomial:
    lhs: TropicalPolynomial
    rhs: TropicalPolynomial

    def __post_init__(self):
        if self.lhs.num_vars != self.rhs.num_vars:
            raise ValueError("sides of a min-plus polynomial must share variables")

    @property
    def num_vars(self) -> int:
        return self.lhs.num_vars

    @property
    def degree(self) -> int:
        return max(self.lhs.degree, self.rhs.degree)

    def colored_phi(self) -> dict:
        """Exponent -> (coefficient, black, white); black marks the lhs, white the rhs."""
        out = {}
        for e in set(self.lhs.terms) | set(self.rhs.terms):
            a = self.lhs.terms.get(e, INF)
            b = self.rhs.terms.get(e, INF)
            c = min(a, b)
            out[e] = (c, a == c, b == c)
        return out

    def __str__(self):
        return f"({self.lhs}, {self.rhs})"


Polynomial = Union[TropicalPolynomial, MinPlusPolynomial]


def _check_dim(f, a):
    if len(a) != f.num_vars:
        raise ValueError(f"point of length {len(a)} for {f.num_vars} variables")


def eval_tropical(f: TropicalPolynomial, a: Sequence[ExtValue]) -> tuple[ExtValue, set]:
    _check_dim(f, a)
    a = [ext(v) for v in a]
    best = INF
    arg: set = set()
    for e, c in f.terms.items():
        v = dot(a, e)
        if v is INF:
            continue
        v = v + c
        if v < best:
            best, arg = v, {e}
        elif v == best:
            arg.add(e)
    return best, arg


def is_root_tropical(f: TropicalPolynomial, a) -> bool:
    value, arg = eval_tropical(f, a)
    if value is INF or len(arg) >= 2:
        return True
    return next(iter(arg)) in f.doubled


def is_root_minplus(p: MinPlusPolynomial, a) -> bool:
    return eval_tropical(p.lhs, a)[0] == eval_tropical(p.rhs, a)[0]


def is_root(p: Polynomial, a) -> bool:
    if isinstance(p, MinPlusPolynomial):
        return is_root_minplus(p, a)
    return is_root_tropical(p, a)


def is_root_system(F: Sequence[Polynomial], a) -> bool:
    return all(is_root(p, a) for p in F)


def system_degrees(F: Sequence[Polynomial]) -> list[int]:
    return [p.degree for p in F]


def system_num_vars(F: Sequence[Polynomial]) -> int:
    if not F:
        raise ValueError("empty system")
    n = F[0].num_vars
    if any(p.num_vars != n for p in F):
        raise ValueError("polynomials disagree on the number of variables")
    return n


@dataclass(frozen=True)
class SingularitySet:
    shift: Optional[Fraction]
    points: frozenset
    colors: Optional[Mapping] = None

    def __len__(self):
        return len(self.points)


def sing_set(phi: Mapping, psi: Mapping) -> SingularitySet:
    """Points where the highest translate φ + t lying below ψ touches ψ."""
    common = [e for e in phi if e in psi]
    if not common:
        return SingularitySet(None, frozenset())
    t = min(psi[e] - phi[e] for e in common)
    pts = frozenset(e for e in common if psi[e] - phi[e] == t)
    return SingularitySet(t, pts)


def is_singular(phi: Mapping, psi: Mapping) -> bool:
    return len(sing_set(phi, psi).points) != 1


def sing_set_colored(phi: Mapping, colored: Mapping) -> SingularitySet:
    """Like sing_set, for ψ given as exponent -> (value, black, white)."""
    s = sing_set(phi, {e: v[0] for e, v in colored.items()})
    cols = {e: (colored[e][1], colored[e][2]) for e in s.points}
    return SingularitySet(s.shift, s.points, cols)


def is_singular_colored(phi: Mapping, colored: Mapping) -> bool:
    s = sing_set_colored(phi, colored)
    if not s.points:
        return True
    return any(b for b, _ in s.colors.values()) and any(w for _, w in s.colors.values())


def chi(a: Sequence[ExtValue], exps: Iterable[Exponent]) -> dict:
    """χ_a(I) = −⟨a, I⟩ on the exponents where it is finite."""
    out = {}
    for e in exps:
        v = dot(a, e)
        if v is not INF:
            out[e] = -v
    return out
