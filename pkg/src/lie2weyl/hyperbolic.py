"""Exact identities for g = coth(x/2) and f = (x/2)coth(x/2).

Derivatives of g are polynomials in g because 2g' = 1 - g^2, so every
identity below is an equality in Q[g] or of truncated power series.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .exact import Polynomial, PowerSeries, bernoulli, beta, f_series

__all__ = [
    "GPoly",
    "g_derivative",
    "coth_identity",
    "coth_identity_check",
    "functional_equation_series",
    "functional_equation_check",
    "alpha_from_series",
]

GPoly = Polynomial

_G_PRIME = Polynomial([Fraction(1, 2), 0, Fraction(-1, 2)])
_g_memo: list[Polynomial] = [Polynomial([0, 1])]
_g_lock = threading.Lock()


def g_derivative(j: int) -> Polynomial:
    """j-th x-derivative of coth(x/2) as a polynomial in g."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if j >= len(_g_memo):
        with _g_lock:
            while len(_g_memo) <= j:
                _g_memo.append(_g_memo[-1].derivative() * _G_PRIME)
    return _g_memo[j]


def coth_identity(i: int) -> Polynomial:
    """(i/2) g g^(i-1) + sum_{k <= (i-1)/2} C(i,2k) B_2k g^(i-2k); zero for i >= 2."""
    if i < 2:
        raise ValueError("i must be >= 2")
    g = Polynomial([0, 1])
    out = g * g_derivative(i - 1) * Fraction(i, 2)
    for k in range((i - 1) // 2 + 1):
        out = out + g_derivative(i - 2 * k) * (comb(i, 2 * k) * bernoulli(2 * k))
    return out


def coth_identity_check(i: int) -> bool:
    return coth_identity(i).is_zero()


def _nth_derivative(s: PowerSeries, k: int) -> PowerSeries:
    for _ in range(k):
        s = s.derivative()
    return s


def functional_equation_series(i: int, order: int) -> PowerSeries:
    """(1/i!) f f^(i) + sum_{k<=i/2} beta_2k x f^(i-2k+1)/(i-2k+1)! - [i even] beta_i f."""
    if i < 0:
        raise ValueError("i must be >= 0")
    f = f_series(order + i + 1)
    out = (f * _nth_derivative(f, i)) * Fraction(1, factorial(i))
    for k in range(i // 2 + 1):
        p = i - 2 * k + 1
        out = out + _nth_derivative(f, p).times_x() * (beta(2 * k) / factorial(p))
    if i % 2 == 0:
        out = out - f * beta(i)
    return PowerSeries.from_coefficients(out.coefficients, min(out.order, order))


def functional_equation_check(i: int, N_max: int) -> bool:
    """Coefficient of x^(N-i) vanishes for every even N with max(4, i+1) <= N <= N_max."""
    if N_max % 2:
        raise ValueError("N_max must be even")
    series = functional_equation_series(i, max(N_max - i, 0))
    for N in range(max(4, i + 1), N_max + 1):
        if N % 2 == 0 and series[N - i] != 0:
            return False
    return True


def alpha_from_series(i: int, N: int) -> Fraction:
    """(N-i)! times the x^(N-i) coefficient of the functional-equation series."""
    return functional_equation_series(i, N - i)[N - i] * factorial(N - i)
