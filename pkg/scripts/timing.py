"""Wall time of check_commutators against truncation order.

Run: python3 scripts/timing.py [--max-order 10] [--algebra so3]
"""

from __future__ import annotations

import argparse
import time

from lie2weyl.lie import load_algebra
from lie2weyl.realization import realize
from lie2weyl.verifier import check_commutators


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--algebra", default="so3")
    ap.add_argument("--max-order", type=int, default=10)
    args = ap.parse_args()
    C = load_algebra(args.algebra)
    print(f"{'T':>3} {'terms(X1)':>10} {'seconds':>9} pass")
    for T in range(1, args.max_order + 1):
        start = time.perf_counter()
        rep = check_commutators(C, 1, T)
        elapsed = time.perf_counter() - start
        print(f"{T:>3} {len(realize(C, 1, T)[0]):>10} {elapsed:>9.3f} {rep.passed}")


if __name__ == "__main__":
    main()
