"""Tabulate M-chain equality and the middle b-chains on real structure constants.

Run: python3 scripts/m_chain_data.py [--max-n 6]
"""

from __future__ import annotations

import argparse

from lie2weyl.chains import ConcreteTensors, concrete_tensor_check
from lie2weyl.lie import CATALOG_SUITE, catalog


def first_nonzero_b(C, N: int) -> str:
    """A witness b_i (0 < i < N-1) with a nonzero component, or '-'."""
    T = ConcreteTensors(C, N + 1)
    n = C.dim
    for i in range(1, N - 1):
        for g in range(n):
            for mu in range(n):
                for nu in range(mu + 1, n):
                    v = T.b(i, N, g, mu, nu)
                    if not v.is_zero():
                        return f"b{i}[g={g + 1},{mu + 1},{nu + 1}] = {v.canonical_text()}"
    return "-"


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    for name in CATALOG_SUITE:
        C = catalog(name)
        row = ["T" if concrete_tensor_check(C, N, "su2-equal") else "F" for N in range(1, args.max_n + 1)]
        print(f"{name:<22} su2-equal N=1..{args.max_n}: {' '.join(row)}")
        for N in range(3, args.max_n + 1, 2):
            w = first_nonzero_b(C, N)
            if w != "-":
                print(f"{'':<22} N={N}: {w}")


if __name__ == "__main__":
    main()
