"""Roots with infinite coordinates, and a system over R-inf without roots.

    python demos/infinite_roots.py
"""

from tropsatz.nullsatz import decide, extract_primary, verify_primary
from tropsatz.oracle import generate_fixture
from tropsatz.poly import TropicalPolynomial


def main():
    F = [TropicalPolynomial.from_terms(2, [(0, (0, 0)), (0, (0, 1))]),
         TropicalPolynomial.from_terms(2, [(0, (1, 0))])]
    print("over R:   ", decide(F, "R"))
    print("over Rinf:", decide(F, "Rinf"))
    fx = generate_fixture("inf_family", {"n": 2, "d": 2})
    print(fx.name, decide(fx.polys, "Rinf"))
    cert = extract_primary(fx.polys, "Rinf")
    print("certificate verified:", verify_primary(fx.polys, cert))


if __name__ == "__main__":
    main()
