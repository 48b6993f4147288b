"""Alternatives for min-plus and tropical linear systems, each with a checkable witness."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import INF, ExtValue
from .game import build_game, solve_nonstrict, solve_strict, strict_credits
from .linsys import (
    MinPlusSystem,
    Relation,
    TropMatrix,
    check_minplus_solution,
    check_tropical_solution,
    lean_tropical_system,
    matvec,
    row_argmin,
)


class Flavor(enum.Enum):
    FIN_ALL = "all"  # primal x finite on all of S
    FIN_SOME = "some"  # primal x finite somewhere on S


@dataclass(frozen=True)
class DualityOutcome:
    side: str  # "primal" or "dual"
    vector: tuple
    flavor: Flavor
    S: tuple
    witness: Optional[int] = None  # an index of S meeting a "for some" demand

    @property
    def is_primal(self) -> bool:
        return self.side == "primal"


def _flavor(f) -> Flavor:
    return f if isinstance(f, Flavor) else Flavor(f)


def check_minplus_primal(A: TropMatrix, B: TropMatrix, x, S, flavor) -> bool:
    if not check_minplus_solution(MinPlusSystem(A, B, Relation.LEQ), x):
        return False
    fin = [x[i] is not INF for i in S]
    return all(fin) if _flavor(flavor) is Flavor.FIN_ALL else any(fin)


def check_minplus_dual(A: TropMatrix, B: TropMatrix, y, S, flavor) -> bool:
    Bt, At = B.transpose(), A.transpose()
    if not check_minplus_solution(MinPlusSystem(Bt, At, Relation.LT), y):
        return False
    fin = [v is not INF for k, v in enumerate(matvec(Bt, y)) if k in set(S)]
    return any(fin) if _flavor(flavor) is Flavor.FIN_ALL else all(fin)


def minplus_alternative(A: TropMatrix, B: TropMatrix, S: Iterable[int], flavor=Flavor.FIN_ALL) -> DualityOutcome:
    """Either x with A ⊙ x ≤ B ⊙ x or y with Bᵀ ⊙ y < Aᵀ ⊙ y, finite as the flavor demands."""
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    flavor = _flavor(flavor)
    S = tuple(sorted(set(S)))
    if any(not 0 <= i < A.n for i in S):
        raise ValueError("index in S out of range")
    sys_ = MinPlusSystem(A, B, Relation.LEQ)
    dual_sys = MinPlusSystem(B.transpose(), A.transpose(), Relation.LEQ)
    if flavor is Flavor.FIN_ALL:
        x = solve_nonstrict(sys_, S_fin=S)
        if x is not None:
            out = DualityOutcome("primal", tuple(x), flavor, S)
        else:
            # some i in S is losing for the column player; its row wins in the dual game
            cred = strict_credits(build_game(dual_sys))
            hit = next((i for i in S if cred.rows[i] is not INF), None)
            out = DualityOutcome("dual", tuple(cred.cols), flavor, S, hit) if hit is not None else None
    else:
        x = solve_nonstrict(sys_)
        hit = next((i for i in S if x[i] is not INF), None)
        if hit is not None:
            out = DualityOutcome("primal", tuple(x), flavor, S, hit)
        else:
            y = solve_strict(dual_sys, R_fin=S)
            out = DualityOutcome("dual", tuple(y), flavor, S) if y is not None else None
    if out is None:
        raise AssertionError("neither alternative found; the game solver is inconsistent")
    ok = (check_minplus_primal if out.is_primal else check_minplus_dual)(A, B, out.vector, S, flavor)
    if not ok:
        raise AssertionError(f"unverified {out.side} certificate")
    return out


def verify_tropical_dual(A: TropMatrix, z: Sequence[ExtValue], S: Iterable[int], flavor=Flavor.FIN_ALL) -> bool:
    """Every row of Aᵀ ⊙ z has a unique minimum or is ∞, distinct rows use distinct columns,
    and the finiteness demand on S holds (some for FIN_ALL, all for FIN_SOME)."""
    if len(z) != A.m:
        raise ValueError(f"vector of length {len(z)} for {A.m} rows")
    flavor = _flavor(flavor)
    At = A.transpose()
    used = set()
    finite = []
    for r in At.rows:
        v, arg = row_argmin(r, z)
        if v is INF:
            finite.append(False)
            continue
        if len(arg) != 1 or arg[0] in used:
            return False
        used.add(arg[0])
        finite.append(True)
    fin = [finite[i] for i in S]
    return any(fin) if flavor is Flavor.FIN_ALL else all(fin)


def check_tropical_primal(A: TropMatrix, x, S, flavor) -> bool:
    if not check_tropical_solution(A, x):
        return False
    fin = [x[i] is not INF for i in S]
    return all(fin) if _flavor(flavor) is Flavor.FIN_ALL else any(fin)


def unpack_tropical_dual(A: TropMatrix, y: Sequence[ExtValue], labels: Sequence[tuple]) -> list:
    """From a dual of the lean min-plus form to z: one lean row per column with a finite minimum."""
    by_col: dict = {}
    for k, (i, l) in enumerate(labels):
        if y[k] is INF:
            continue
        v = A.rows[i][l] + y[k]
        best = by_col.get(l)
        if best is None or v < best[0] or (v == best[0] and i < best[1]):
            by_col[l] = (v, i, y[k])
    z: list = [INF] * A.m
    for l, (v, i, yk) in sorted(by_col.items()):
        if z[i] is not INF and z[i] != yk:
            raise AssertionError(f"row {i} picked twice with different values")
        z[i] = yk
    return z


def tropical_alternative(A: TropMatrix, S: Iterable[int], flavor=Flavor.FIN_ALL) -> DualityOutcome:
    """Either a solution x of A ⊙ x or a certificate z as checked by verify_tropical_dual."""
    flavor = _flavor(flavor)
    if any(A.doubled):
        raise ValueError("the dual side is not defined for repeated monomials")
    S = tuple(sorted(set(S)))
    L, labels = lean_tropical_system(A)
    res = minplus_alternative(L.lhs, L.rhs, S, flavor)
    if res.is_primal:
        out = DualityOutcome("primal", res.vector, flavor, S, res.witness)
        if not check_tropical_primal(A, out.vector, S, flavor):
            raise AssertionError("lean system solution is not a tropical solution")
        return out
    z = unpack_tropical_dual(A, res.vector, labels)
    if not verify_tropical_dual(A, z, S, flavor):
        raise AssertionError(f"unpacked certificate {z} does not verify")
    return DualityOutcome("dual", tuple(z), flavor, S, res.witness)
