"""Two tropical polynomials with no common root, and the certificate saying so.

    python demos/intro.py
"""

from tropsatz.macaulay import build_macaulay, system_bound
from tropsatz.nullsatz import decide, extract_primary, macaulay_solution, verify_primary
from tropsatz.oracle import generate_fixture


def main():
    F = generate_fixture("intro").polys
    for f in F:
        print("f =", f)
    N = system_bound(F, "R")
    print(f"degree bound N = {N}")
    for k in range(1, N + 1):
        y = macaulay_solution(build_macaulay(F, k))
        print(f"  Macaulay system at degree {k}: {'solvable' if y else 'unsolvable'}")
    print("decision:", decide(F))
    cert = extract_primary(F)
    print("certificate parts (poly, coefficient, shift):")
    for j, c, J in cert.parts:
        print(f"  {j}  {c}  {J}")
    print("verified:", verify_primary(F, cert))


if __name__ == "__main__":
    main()
