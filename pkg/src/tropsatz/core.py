"""Exact extended rationals, the min-plus semiring operations and exponent vectors."""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Union


class Infinity:
    """Positive infinity. There is exactly one instance, ``INF``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("tropsatz-inf")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtValue = Union[Fraction, Infinity]
Exponent = tuple  # tuple[int, ...] of nonnegative integers

_INT_RE = re.compile(r"-?[0-9]+")
_FRAC_RE = re.compile(r"(-?[0-9]+)/([0-9]+)")


def is_inf(v) -> bool:
    return v is INF


def ext(v) -> ExtValue:
    """Coerce an int, Fraction, INF or text form into an ExtValue."""
    if v is INF:
        return INF
    if isinstance(v, str):
        return parse_value(v)
    if isinstance(v, bool):
        raise TypeError("booleans are not semiring values")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    raise TypeError(f"cannot use {v!r} as an exact value")


def parse_value(text: str) -> ExtValue:
    s = text.strip()
    if s == "inf":
        return INF
    if _INT_RE.fullmatch(s):
        return Fraction(int(s))
    m = _FRAC_RE.fullmatch(s)
    if m:
        q = int(m.group(2))
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), q)
    raise ValueError(f"not a value: {text!r}")


def format_value(v: ExtValue) -> str:
    if v is INF:
        return "inf"
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def oplus(a: ExtValue, b: ExtValue) -> ExtValue:
    return a if a <= b else b


def otimes(a: ExtValue, b: ExtValue) -> ExtValue:
    if a is INF or b is INF:
        return INF
    return a + b


def semiring_ops(a: ExtValue, b: ExtValue) -> tuple[ExtValue, ExtValue]:
    """Return ``(a ⊕ b, a ⊙ b)``."""
    return oplus(a, b), otimes(a, b)


def scale(k: int, a: ExtValue) -> ExtValue:
    """k·a for a nonnegative integer k, with 0·∞ = 0."""
    if k < 0:
        raise ValueError("scale needs a nonnegative multiplier")
    if k == 0:
        return Fraction(0)
    if a is INF:
        return INF
    return k * a


def tsum(values: Iterable[ExtValue]) -> ExtValue:
    """Tropical sum of an iterable; the empty sum is ∞."""
    best = INF
    for v in values:
        if v < best:
            best = v
    return best


def neg(a: ExtValue) -> Fraction:
    if a is INF:
        raise ValueError("-inf is not a value")
    return -a


def common_denominator(values: Iterable[ExtValue]) -> int:
    """LCM of the denominators of the finite values (1 if there are none)."""
    den = 1
    for v in values:
        if v is not INF:
            den = math.lcm(den, Fraction(v).denominator)
    return den


def dot(a, exp) -> ExtValue:
    """⟨a, I⟩ with 0·∞ = 0."""
    total = Fraction(0)
    for ai, k in zip(a, exp):
        if k:
            if ai is INF:
                return INF
            total += k * ai
    return total


# exponent vectors

def exponent(coords: Iterable[int]) -> Exponent:
    e = tuple(int(c) for c in coords)
    if any(c < 0 for c in e):
        raise ValueError(f"negative exponent {e}")
    return e


def degree(e: Exponent) -> int:
    return sum(e)


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exponent, b: Exponent):
    """a − b, or None when some coordinate would go negative."""
    out = tuple(x - y for x, y in zip(a, b))
    if any(c < 0 for c in out):
        return None
    return out


def zero_exponent(n: int) -> Exponent:
    return (0,) * n


def unit_exponent(n: int, i: int, k: int = 1) -> Exponent:
    e = [0] * n
    e[i] = k
    return tuple(e)


def exponents_of_degree(n: int, d: int) -> Iterator[Exponent]:
    """All exponents in n variables of total degree exactly d, lexicographically descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in exponents_of_degree(n - 1, d - first):
            yield (first,) + rest


def exponents_upto(n: int, N: int) -> list[Exponent]:
    """All exponents with |I| ≤ N, graded by degree."""
    return list(itertools.chain.from_iterable(exponents_of_degree(n, d) for d in range(N + 1)))
