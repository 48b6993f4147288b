"""The lower-bound family: small Macaulay systems are solvable though no root exists.

    python demos/lower_bounds.py [n] [d]
"""

import sys

from tropsatz.macaulay import build_macaulay, check_macaulay_solution
from tropsatz.nullsatz import macaulay_solution
from tropsatz.oracle import generate_fixture, oracle_solve


def main(n=2, d=2):
    fx = generate_fixture("lmp", {"n": n, "d": d})
    for f in fx.polys:
        print("  ", f)
    print("oracle root:", oracle_solve(fx.polys, "R"))
    small = (d - 1) * (n - 1)
    M = build_macaulay(fx.polys, small)
    y = [fx.candidate(e) for e in M.index.exps]
    print(f"weight vector solves M_{small}:", check_macaulay_solution(M, y))
    N = small + 1
    while macaulay_solution(build_macaulay(fx.polys, N)) is not None:
        N += 1
    print(f"first unsolvable degree: {N}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
