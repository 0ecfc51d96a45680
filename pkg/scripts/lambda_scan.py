"""Check the commutation relations for several lambda on every catalog algebra.

Only lambda = 1 (or a totally antisymmetric algebra) is gated; the rest is data.
Run: python3 scripts/lambda_scan.py [--order 5]
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from lie2weyl.lie import CATALOG_SUITE, catalog
from lie2weyl.verifier import check_commutators

LAMBDAS = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(-3, 2))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=5)
    args = ap.parse_args()
    print(f"{'algebra':<22}" + "".join(f"{str(l):>8}" for l in LAMBDAS))
    for name in CATALOG_SUITE:
        C = catalog(name)
        cells = []
        for lam in LAMBDAS:
            rep = check_commutators(C, lam, args.order)
            mark = "ok" if rep.passed else "FAIL"
            cells.append(mark if rep.gated else mark + "*")
        print(f"{name:<22}" + "".join(f"{c:>8}" for c in cells))
    print("* = not gated (lambda != 1 on an algebra that is not totally antisymmetric)")


if __name__ == "__main__":
    main()
