"""Exact scalars: rationals, Bernoulli numbers, truncated power series, small linear algebra.

Scalars are :class:`fractions.Fraction` throughout; nothing in the package
touches floating point.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "bernoulli",
    "bernoulli_table",
    "beta",
    "convolution_identity_check",
    "PowerSeries",
    "f_series",
    "Polynomial",
    "matrix_rank",
    "matrix_inverse",
]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (ints and Fractions pass through)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if not s or any(c in s for c in ".eE_ "):
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# Bernoulli numbers, B_1 = -1/2 (generating function T/(e^T - 1)).
_bern: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def _extend_bernoulli(n: int) -> None:
    with _bern_lock:
        for m in range(len(_bern), n + 1):
            if m > 1 and m % 2 == 1:
                _bern.append(Fraction(0))
                continue
            # sum_{j<=m} C(m+1, j) B_j = 0
            s = sum((comb(m + 1, j) * _bern[j] for j in range(m)), Fraction(0))
            _bern.append(-s / (m + 1))


def bernoulli(n: int) -> Fraction:
    if n < 0:
        raise ValueError("bernoulli index must be >= 0")
    if n >= len(_bern):
        _extend_bernoulli(n)
    return _bern[n]


def bernoulli_table(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n as a tuple."""
    bernoulli(n)
    return tuple(_bern[: n + 1])


def beta(k: int) -> Fraction:
    """B_k / k!, the Taylor coefficients of (x/2)coth(x/2) at even k."""
    return bernoulli(k) / factorial(k)


def convolution_identity_check(l: int) -> bool:
    """sum_{s=1}^{l} beta_{2s} beta_{2l-2s} == -B_{2l}/(2l-1)! + delta_{l,1}/4."""
    if l < 1:
        raise ValueError("l must be >= 1")
    lhs = sum((beta(2 * s) * beta(2 * l - 2 * s) for s in range(1, l + 1)), Fraction(0))
    rhs = -bernoulli(2 * l) / factorial(2 * l - 1) + (Fraction(1, 4) if l == 1 else 0)
    return lhs == rhs


@dataclass(frozen=True)
class PowerSeries:
    """Univariate series known exactly up to x**order.

    Asking for a coefficient past ``order`` is an error, never a silent zero.
    """

    coefficients: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(self.coefficients) != self.order + 1:
            raise ValueError("need exactly order+1 coefficients")

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, order: int) -> "PowerSeries":
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs), order)

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("negative power")
        if k > self.order:
            raise IndexError(f"coefficient of x^{k} lies beyond truncation order {self.order}")
        return self.coefficients[k]

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.from_coefficients([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        m = min(self.order, other.order)
        return PowerSeries(tuple(self[k] + other[k] for k in range(m + 1)), m)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coefficients), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = Fraction(other)
            return PowerSeries(tuple(c * a for a in self.coefficients), self.order)
        m = min(self.order, other.order)
        out = [Fraction(0)] * (m + 1)
        for i in range(m + 1):
            a = self.coefficients[i]
            if a:
                for j in range(m + 1 - i):
                    out[i + j] += a * other.coefficients[j]
        return PowerSeries(tuple(out), m)

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeries":
        if self.order == 0:
            raise ValueError("derivative of an order-0 series has no known coefficients")
        return PowerSeries(
            tuple(k * self.coefficients[k] for k in range(1, self.order + 1)), self.order - 1
        )

    def times_x(self) -> "PowerSeries":
        return PowerSeries((Fraction(0),) + self.coefficients, self.order + 1)


def f_series(order: int) -> PowerSeries:
    """(x/2)coth(x/2) = sum_J B_{2J}/(2J)! x^{2J}, through x**order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return PowerSeries(
        tuple(beta(k) if k % 2 == 0 else Fraction(0) for k in range(order + 1)), order
    )


class Polynomial:
    """Dense univariate polynomial over Q, canonical (no trailing zeros)."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        cs = [Fraction(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"Polynomial({[format_rational(c) for c in self.coefficients]})"

    def _coerce(self, other) -> "Polynomial":
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        m = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(self[k] + other[k] for k in range(m))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(c * a for a in self.coefficients)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coefficients) if k)

    def shift(self, a=1) -> "Polynomial":
        """P(T + a)."""
        out = Polynomial()
        step = Polynomial([a, 1])
        for c in reversed(self.coefficients):
            out = out * step + c
        return out


def _to_domain(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    data = [[QQ(Fraction(c).numerator, Fraction(c).denominator) for c in r] for r in rows]
    return DomainMatrix(data, (m, n), QQ)


def matrix_rank(rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    return _to_domain(rows).rank()


def matrix_inverse(rows: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse; raises ValueError when singular."""
    dm = _to_domain(rows)
    if dm.shape[0] != dm.shape[1]:
        raise ValueError("matrix is not square")
    if dm.rank() < dm.shape[0]:
        raise ValueError("matrix is singular")
    inv = dm.inv().to_list()
    return tuple(tuple(Fraction(int(c.numerator), int(c.denominator)) for c in r) for r in inv)
