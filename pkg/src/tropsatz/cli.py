"""Command line front end.

Exit codes: 0 for solvable / a root / success, 1 for unsolvable / not a root,
2 for bad input. Systems, matrices and certificates are JSON with exact values
written as strings ("3", "-1/2", "inf").
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import INF, format_value, parse_value
from .duality import Flavor, minplus_alternative, tropical_alternative
from .game import build_game, min_credits, solve_nonstrict, solve_strict, strict_credits, winners
from .linsys import MinPlusSystem, Relation, TropMatrix, lean_tropical_system
from .macaulay import build_macaulay, system_bound
from .nullsatz import NoRoot, certificate_to_json, decide, extract_primary, verify_primary
from .oracle import generate_fixture, oracle_solve
from .poly import MinPlusPolynomial, TropicalPolynomial, is_root_system, system_num_vars
from .reduce import minplus_to_tropical, tropical_to_minplus

log = logging.getLogger("tropsatz")


class InputError(Exception):
    pass


# -- file formats -----------------------------------------------------------


def _value(text, where: str):
    if not isinstance(text, str):
        raise InputError(f"{where}: values must be strings, got {text!r}")
    try:
        return parse_value(text)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def _poly_from_json(obj, n: int, where: str) -> TropicalPolynomial:
    pairs = []
    for t, mono in enumerate(obj.get("monomials", [])):
        c = _value(mono["coef"], f"{where} monomial {t}")
        if c is INF:
            raise InputError(f"{where} monomial {t}: leave out monomials with coefficient inf")
        e = mono["exp"]
        if len(e) != n or any(not isinstance(k, int) or k < 0 for k in e):
            raise InputError(f"{where} monomial {t}: bad exponent {e}")
        pairs.append((c, tuple(e)))
    seen: dict = {}
    for c, e in pairs:
        if seen.setdefault(e, c) != c:
            raise InputError(f"{where}: exponent {list(e)} appears with different coefficients")
    try:
        # a monomial written twice with one coefficient is a repeated monomial
        return TropicalPolynomial.from_terms(n, pairs, merge=True)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def _poly_to_json(f: TropicalPolynomial) -> dict:
    return {"monomials": [{"coef": format_value(c), "exp": list(e)} for e, c in f.terms.items()]}


def system_from_json(data: dict) -> tuple[list, str]:
    """The polynomials and the semiring of a system file."""
    try:
        kind = data["kind"]
        n = data["num_vars"]
        semiring = data.get("semiring", "R")
        if semiring not in ("R", "Rinf"):
            raise InputError(f"unknown semiring {semiring!r}")
        if not isinstance(n, int) or n < 0:
            raise InputError(f"bad num_vars {n!r}")
        polys = []
        for k, p in enumerate(data["polynomials"]):
            if kind == "tropical":
                polys.append(_poly_from_json(p, n, f"polynomial {k}"))
            elif kind == "minplus":
                polys.append(MinPlusPolynomial(
                    _poly_from_json(p["lhs"], n, f"polynomial {k} lhs"),
                    _poly_from_json(p["rhs"], n, f"polynomial {k} rhs"),
                ))
            else:
                raise InputError(f"unknown kind {kind!r}")
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed system file: {exc!r}") from None
    if not polys:
        raise InputError("the system has no polynomials")
    return polys, semiring


def system_to_json(F: Sequence, semiring: str = "R") -> dict:
    minplus = isinstance(F[0], MinPlusPolynomial)
    if minplus:
        polys = [{"lhs": _poly_to_json(p.lhs), "rhs": _poly_to_json(p.rhs)} for p in F]
    else:
        polys = [_poly_to_json(p) for p in F]
    return {
        "semiring": semiring,
        "kind": "minplus" if minplus else "tropical",
        "num_vars": system_num_vars(F),
        "polynomials": polys,
    }


def matrix_from_json(data: dict) -> TropMatrix:
    try:
        m, n = data["rows"], data["cols"]
        rows: list = [dict() for _ in range(m)]
        for i, j, v in data["entries"]:
            if not (0 <= i < m and 0 <= j < n):
                raise InputError(f"entry ({i},{j}) outside a {m}x{n} matrix")
            if j in rows[i]:
                raise InputError(f"duplicate entry ({i},{j})")
            rows[i][j] = _value(v, f"entry ({i},{j})")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix file: {exc!r}") from None
    return TropMatrix(m, n, rows)


def matrix_to_json(A: TropMatrix, legend: Optional[Sequence] = None) -> dict:
    out = {
        "rows": A.m,
        "cols": A.n,
        "entries": [[i, j, format_value(v)] for i, r in enumerate(A.rows) for j, v in sorted(r.items())],
    }
    if legend is not None:
        out["legend"] = {str(k): list(e) for k, e in enumerate(legend)}
    return out


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not JSON: {exc}") from None


def _write_json(path: Optional[str], data) -> None:
    text = json.dumps(data, indent=2)
    if path is None or path == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")


def _point(text: str) -> list:
    return [_value(v, "point") for v in text.split(",")] if text.strip() else []


def _indices(text: Optional[str]) -> list:
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"bad index list {text!r}") from None


def _fmt_vec(x) -> str:
    return "(" + ", ".join(format_value(v) for v in x) + ")"


# -- commands ---------------------------------------------------------------


def cmd_solve(args) -> int:
    F, semiring = system_from_json(_read_json(args.file))
    semiring = args.semiring or semiring
    res = decide(F, semiring)
    if not isinstance(res, NoRoot):
        print("SOLVABLE")
        print("root", _fmt_vec(res.point))
        if args.certificate:
            _write_json(args.certificate, certificate_to_json(res))
        return 0
    print("UNSOLVABLE")
    try:
        cert = extract_primary(F, semiring)
    except ValueError as exc:
        print(f"no certificate: {exc}")
        return 1
    data = certificate_to_json(cert)
    print(f"certificate {data['kind']} with {len(cert.parts)} parts at degree {cert.N}, verified {verify_primary(F, cert)}")
    if args.certificate:
        _write_json(args.certificate, data)
    return 1


def cmd_check_root(args) -> int:
    F, _ = system_from_json(_read_json(args.file))
    a = _point(args.point)
    if len(a) != system_num_vars(F):
        raise InputError(f"point has {len(a)} coordinates, the system has {system_num_vars(F)} variables")
    ok = is_root_system(F, a)
    print("ROOT" if ok else "NOT A ROOT")
    return 0 if ok else 1


def cmd_macaulay(args) -> int:
    F, semiring = system_from_json(_read_json(args.file))
    if args.bound:
        N = system_bound(F, semiring)
    elif args.degree is not None:
        N = args.degree
    else:
        raise InputError("give --degree N or --bound")
    M = build_macaulay(F, N)
    legend = M.index.exps
    if M.kind == "tropical":
        data = matrix_to_json(M.matrix(), legend)
    else:
        S = M.system()
        data = {"lhs": matrix_to_json(S.lhs, legend), "rhs": matrix_to_json(S.rhs, legend)}
    data["row_labels"] = [[j, list(J)] for j, J in M.row_labels]
    data["degree"] = N
    _write_json(args.out, data)
    log.info("Macaulay matrix %dx%d at N=%d", *M.shape, N)
    return 0


def _pair(args):
    A = matrix_from_json(_read_json(args.matrix))
    B = matrix_from_json(_read_json(args.minplus)) if args.minplus else None
    if B is not None and A.shape != B.shape:
        raise InputError(f"shapes differ: {A.shape} and {B.shape}")
    return A, B


def cmd_linsolve(args) -> int:
    A, B = _pair(args)
    fin = _indices(args.finite)
    if any(not 0 <= j < A.n for j in fin):
        raise InputError("--finite index out of range")
    if B is None:
        L, _ = lean_tropical_system(A)
        x = solve_nonstrict(L, S_fin=fin)
    elif args.strict:
        x = solve_strict(MinPlusSystem(A, B, Relation.LT), S_fin=fin)
    else:
        x = solve_nonstrict(MinPlusSystem(A, B, Relation.LEQ), S_fin=fin)
    if x is None:
        print("NONE")
        return 1
    print(_fmt_vec(x))
    return 0


def cmd_duality(args) -> int:
    A, B = _pair(args)
    S = _indices(args.S) if args.S else list(range(A.n))
    if any(not 0 <= j < A.n for j in S):
        raise InputError("--S index out of range")
    flavor = Flavor(args.flavor)
    out = tropical_alternative(A, S, flavor) if B is None else minplus_alternative(A, B, S, flavor)
    print(out.side.upper())
    print(_fmt_vec(out.vector))
    return 0 if out.is_primal else 1


def cmd_reduce(args) -> int:
    F, semiring = system_from_json(_read_json(args.file))
    minplus = isinstance(F[0], MinPlusPolynomial)
    if args.to == "minplus":
        G = F if minplus else tropical_to_minplus(F)
    else:
        G = minplus_to_tropical(F) if minplus else F
    if any(isinstance(p, TropicalPolynomial) and p.doubled for p in G):
        log.info("the output repeats some monomials; they are written twice")
        data = system_to_json(G, semiring)
        for p, obj in zip(G, data["polynomials"]):
            obj["monomials"] += [{"coef": format_value(p.terms[e]), "exp": list(e)} for e in sorted(p.doubled)]
    else:
        data = system_to_json(G, semiring)
    _write_json(args.out, data)
    return 0


def cmd_game(args) -> int:
    data = _read_json(args.file)
    try:
        A, B = matrix_from_json(data["lhs"]), matrix_from_json(data["rhs"])
    except (KeyError, TypeError):
        raise InputError("a game file holds the matrices of A ⊙ x ≤ B ⊙ x under 'lhs' and 'rhs'") from None
    if A.shape != B.shape:
        raise InputError(f"shapes differ: {A.shape} and {B.shape}")
    G = build_game(MinPlusSystem(A, B, Relation.LEQ))
    w = winners(G)
    cred = min_credits(G)
    strict = strict_credits(G)
    for kind, name, c, s in (("r", "row", cred.rows, strict.rows), ("c", "col", cred.cols, strict.cols)):
        for k in range(len(c)):
            print(f"{name} {k}: {w[(kind, k)]} credit {format_value(c[k])} strict {format_value(s[k])}")
    return 0


def _params(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"parameters look like key=value, got {item!r}")
        k, v = item.split("=", 1)
        if v.lower() in ("true", "false"):
            out[k] = v.lower() == "true"
        else:
            try:
                out[k] = int(v)
            except ValueError:
                raise InputError(f"bad value for {k}: {v!r}") from None
    return out


def cmd_gen(args) -> int:
    try:
        fx = generate_fixture(args.name, _params(args.params))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = fx.name.replace("(", "_").replace(")", "").replace(",", "_")
    _write_json(str(out / f"{stem}.json"), system_to_json(fx.polys, fx.semiring))
    _write_json(str(out / f"{stem}.expected.json"), fx.expected)
    print(out / f"{stem}.json")
    return 0


def cmd_oracle(args) -> int:
    F, semiring = system_from_json(_read_json(args.file))
    semiring = args.semiring or semiring
    a = oracle_solve(F, semiring)
    if a is None:
        print("UNSOLVABLE")
        return 1
    print("SOLVABLE")
    print("root", _fmt_vec(a))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropsatz", description="Tropical and min-plus polynomial systems.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide a system and print a root or a certificate")
    s.add_argument("file")
    s.add_argument("--semiring", choices=["R", "Rinf"])
    s.add_argument("--certificate", metavar="OUT")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check-root", help="test a point")
    s.add_argument("file")
    s.add_argument("--point", required=True, help='comma separated values, e.g. "0,inf,1/2"')
    s.set_defaults(func=cmd_check_root)

    s = sub.add_parser("macaulay", help="write the Macaulay matrix")
    s.add_argument("file")
    s.add_argument("--degree", type=int)
    s.add_argument("--bound", action="store_true", help="use the proven worst-case degree bound")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_macaulay)

    s = sub.add_parser("linsolve", help="solve a tropical or min-plus linear system")
    s.add_argument("matrix")
    s.add_argument("--minplus", metavar="RHS", help="right-hand matrix B of A ⊙ x ≤ B ⊙ x")
    s.add_argument("--strict", action="store_true")
    s.add_argument("--finite", help="columns that must be finite")
    s.set_defaults(func=cmd_linsolve)

    s = sub.add_parser("duality", help="report which alternative holds")
    s.add_argument("matrix")
    s.add_argument("--minplus", metavar="RHS")
    s.add_argument("--S", help="index set, default all columns")
    s.add_argument("--flavor", choices=["all", "some"], default="all")
    s.set_defaults(func=cmd_duality)

    s = sub.add_parser("reduce", help="translate between tropical and min-plus systems")
    s.add_argument("file")
    s.add_argument("--to", choices=["tropical", "minplus"], required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("game", help="winners and credits of the game of A ⊙ x ≤ B ⊙ x")
    s.add_argument("file")
    s.set_defaults(func=cmd_game)

    s = sub.add_parser("gen", help="write an example family")
    s.add_argument("name", choices=["intro", "lmp", "inf_family", "stepped_pyramid", "stripes"])
    s.add_argument("params", nargs="*", help="key=value, e.g. n=2 d=2 minplus=true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("oracle", help="brute-force decision")
    s.add_argument("file")
    s.add_argument("--semiring", choices=["R", "Rinf"])
    s.set_defaults(func=cmd_oracle)
    return p


def _setup_logging() -> None:
    level = os.environ.get("TROPSATZ_LOG", "quiet").lower()
    levels = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.WARNING), format="%(name)s: %(message)s", stream=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
