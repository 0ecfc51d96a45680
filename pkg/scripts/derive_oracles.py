"""Recompute reference values with sympy only, independent of the lie2weyl engine.

The printed JSON is what the frozen constants in tests/ were copied from.
Run: python3 scripts/derive_oracles.py
"""

from __future__ import annotations

import json

import sympy as sp

x = sp.symbols("x")
X1, X2, X3 = sp.symbols("x1 x2 x3")
VARS = (X1, X2, X3)


def bernoulli_minus(n: int) -> sp.Rational:
    # generating function t/(e^t - 1), which fixes B_1 = -1/2 regardless of sympy's convention
    t = sp.symbols("t")
    ser = sp.series(t / (sp.exp(t) - 1), t, 0, n + 1).removeO()
    return sp.factorial(n) * ser.coeff(t, n)


def f_coefficients(order: int) -> list[sp.Rational]:
    ser = sp.series((x / 2) * sp.coth(x / 2), x, 0, order + 1).removeO()
    return [ser.coeff(x, k) for k in range(order + 1)]


def apply_word(word, f):
    """Apply a word of ('x', i) / ('d', i) letters, rightmost first, to the polynomial f."""
    for kind, i in reversed(word):
        f = sp.expand(VARS[i - 1] * f) if kind == "x" else sp.diff(f, VARS[i - 1])
    return f


def normal_form_by_action(word, degree: int = 4) -> dict:
    """Recover the normal-ordered expansion of a word from its action on monomials.

    A normal-ordered operator sum_{a,b} c x^a d^b applied to x^m gives
    sum c m!/(m-b)! x^(a+m-b); peeling off b in increasing total degree pins c down.
    """
    from itertools import product

    terms: dict = {}
    monos = sorted(product(range(degree + 1), repeat=3), key=sum)
    for m in monos:
        f = sp.Mul(*[v**e for v, e in zip(VARS, m)])
        got = apply_word(word, f)
        known = 0
        for (a, b), c in terms.items():
            if all(bi <= mi for bi, mi in zip(b, m)):
                fall = sp.Mul(*[sp.ff(mi, bi) for mi, bi in zip(m, b)])
                known += c * fall * sp.Mul(*[v ** (ai + mi - bi) for v, ai, mi, bi in zip(VARS, a, m, b)])
        rest = sp.Poly(sp.expand(got - known), *VARS)
        for a, c in rest.terms():
            # the new term has d-part exactly m (lower d-parts were already fixed)
            fall = sp.Mul(*[sp.factorial(mi) for mi in m])
            terms[(a, m)] = terms.get((a, m), 0) + c / fall
    return {f"{a}|{b}": str(c) for (a, b), c in sorted(terms.items()) if c != 0}


def coth_identity_zero(i: int) -> bool:
    g = sp.coth(x / 2)
    expr = sp.Rational(i, 2) * g * sp.diff(g, x, i - 1)
    for k in range((i - 1) // 2 + 1):
        expr += sp.binomial(i, 2 * k) * bernoulli_minus(2 * k) * sp.diff(g, x, i - 2 * k)
    return sp.simplify(expr.rewrite(sp.exp)) == 0


def functional_coefficient(i: int, N: int) -> sp.Rational:
    f = (x / 2) * sp.coth(x / 2)
    expr = f * sp.diff(f, x, i) / sp.factorial(i)
    for k in range(i // 2 + 1):
        p = i - 2 * k + 1
        beta = bernoulli_minus(2 * k) / sp.factorial(2 * k)
        expr += beta * x * sp.diff(f, x, p) / sp.factorial(p)
    if i % 2 == 0:
        expr -= bernoulli_minus(i) / sp.factorial(i) * f
    ser = sp.series(expr, x, 0, N - i + 1).removeO()
    return ser.coeff(x, N - i)


def main() -> None:
    out = {
        "bernoulli_0_12": [str(bernoulli_minus(n)) for n in range(13)],
        "f_coefficients_8": [str(c) for c in f_coefficients(8)],
        "d1^2 x1^2": normal_form_by_action([("d", 1), ("d", 1), ("x", 1), ("x", 1)]),
        "d1 x1": normal_form_by_action([("d", 1), ("x", 1)]),
        "x1 d2 x2 d1 - x2 d1 x1 d2": {
            "first": normal_form_by_action([("x", 1), ("d", 2), ("x", 2), ("d", 1)]),
            "second": normal_form_by_action([("x", 2), ("d", 1), ("x", 1), ("d", 2)]),
        },
        "d2 d1 x1 x2 x3": normal_form_by_action([("d", 2), ("d", 1), ("x", 1), ("x", 2), ("x", 3)], degree=3),
        "coth_identity_zero_2_8": [coth_identity_zero(i) for i in range(2, 9)],
        "functional_i0_x2": str(functional_coefficient(0, 2)),
        "functional": {f"{i},{N}": str(functional_coefficient(i, N)) for i, N in [(0, 4), (1, 6), (5, 12), (2, 8)]},
    }
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
