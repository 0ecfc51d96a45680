"""Normal-ordered, t-graded arithmetic in the Weyl algebra A_n[[t]].

A monomial x^a d^b t^d is keyed by the triple ``(a, b, d)`` of exponent
tuples and t-degree; x-factors always sit left of the d-factors.
"""

from __future__ import annotations

import os
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .exact import format_rational

__all__ = [
    "TermBudgetExceeded",
    "WeylElement",
    "normal_mul",
    "commutator",
    "dagger",
    "delta_derivative",
    "swap_automorphism",
    "max_terms",
]

Exp = tuple[int, ...]
Key = tuple[Exp, Exp, int]


class TermBudgetExceeded(RuntimeError):
    """An element grew past the LIE2WEYL_MAX_TERMS safety cap."""


def max_terms() -> int | None:
    raw = os.environ.get("LIE2WEYL_MAX_TERMS")
    if not raw:
        return None
    try:
        v = int(raw)
    except ValueError:
        return None
    return v if v > 0 else None


def _min_order(p: int | None, q: int | None) -> int | None:
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


@lru_cache(maxsize=None)
def _reorder(b: Exp, a: Exp) -> tuple[tuple[Exp, Exp, int], ...]:
    """d^b x^a = sum_c prod_i C(a_i,c_i) C(b_i,c_i) c_i! x^(a-c) d^(b-c)."""
    ranges = [range(min(ai, bi) + 1) for ai, bi in zip(a, b)]
    out = []
    for c in product(*ranges):
        coef = 1
        for ai, bi, ci in zip(a, b, c):
            if ci:
                coef *= comb(ai, ci) * comb(bi, ci) * factorial(ci)
        out.append(
            (tuple(ai - ci for ai, ci in zip(a, c)), tuple(bi - ci for bi, ci in zip(b, c)), coef)
        )
    return tuple(out)


def _add(x: Exp, y: Exp) -> Exp:
    return tuple(i + j for i, j in zip(x, y))


class WeylElement:
    """Immutable sparse element of A_n[[t]] known modulo t^(order+1).

    ``order=None`` means exact (no truncation).
    """

    __slots__ = ("dim", "order", "_terms")

    def __init__(self, dim: int, terms: Mapping[Key, object] | None = None, order: int | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if order is not None and order < 0:
            raise ValueError("truncation order must be >= 0")
        self.dim = dim
        self.order = order
        clean: dict[Key, Fraction] = {}
        for (a, b, d), c in (terms or {}).items():
            if len(a) != dim or len(b) != dim:
                raise ValueError("exponent length does not match dimension")
            if order is not None and d > order:
                continue
            c = Fraction(c)
            if c:
                clean[(tuple(a), tuple(b), d)] = c
        cap = max_terms()
        if cap is not None and len(clean) > cap:
            raise TermBudgetExceeded(f"element has {len(clean)} terms, cap is {cap}")
        self._terms = clean

    @classmethod
    def _raw(cls, dim: int, terms: dict[Key, Fraction], order: int | None) -> "WeylElement":
        # trusted constructor: terms already clean and truncated
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.order = order
        cap = max_terms()
        if cap is not None and len(terms) > cap:
            raise TermBudgetExceeded(f"element has {len(terms)} terms, cap is {cap}")
        obj._terms = terms
        return obj

    # constructors

    @classmethod
    def zero(cls, dim: int, order: int | None = None) -> "WeylElement":
        return cls._raw(dim, {}, order)

    @classmethod
    def scalar(cls, dim: int, c, order: int | None = None, t_degree: int = 0) -> "WeylElement":
        z = (0,) * dim
        return cls(dim, {(z, z, t_degree): c}, order)

    @classmethod
    def monomial(
        cls, a: Sequence[int], b: Sequence[int], d: int = 0, c=1, order: int | None = None
    ) -> "WeylElement":
        return cls(len(a), {(tuple(a), tuple(b), d): c}, order)

    @classmethod
    def x(cls, dim: int, i: int, order: int | None = None) -> "WeylElement":
        """x_i, 1-based."""
        a = [0] * dim
        a[i - 1] = 1
        return cls.monomial(a, (0,) * dim, 0, 1, order)

    @classmethod
    def d(cls, dim: int, i: int, order: int | None = None) -> "WeylElement":
        """d^i = d/dx_i, 1-based."""
        b = [0] * dim
        b[i - 1] = 1
        return cls.monomial((0,) * dim, b, 0, 1, order)

    @classmethod
    def t(cls, dim: int, order: int | None = None) -> "WeylElement":
        return cls.scalar(dim, 1, order, t_degree=1)

    # inspection

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, a: Sequence[int], b: Sequence[int], d: int = 0) -> Fraction:
        return self._terms.get((tuple(a), tuple(b), d), Fraction(0))

    def t_part(self, d: int) -> "WeylElement":
        return WeylElement._raw(self.dim, {k: v for k, v in self._terms.items() if k[2] == d}, None)

    def t_degrees(self) -> list[int]:
        return sorted({k[2] for k in self._terms})

    def is_x_free(self) -> bool:
        return not any(any(k[0]) for k in self._terms)

    def is_d_free(self) -> bool:
        return not any(any(k[1]) for k in self._terms)

    def truncate(self, order: int | None) -> "WeylElement":
        order = _min_order(self.order, order)
        if order is None:
            return self
        return WeylElement._raw(
            self.dim, {k: v for k, v in self._terms.items() if k[2] <= order}, order
        )

    def with_order(self, order: int | None) -> "WeylElement":
        """Same terms, relabelled truncation (only valid when no information is lost)."""
        return WeylElement(self.dim, self._terms, order)

    def _check(self, other: "WeylElement") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    # equality compares terms modulo the common truncation

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.dim, other, self.order)
        if not isinstance(other, WeylElement):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # ring operations

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.dim, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check(other)
        order = _min_order(self.order, other.order)
        out = dict(self._terms) if order is None else {
            k: v for k, v in self._terms.items() if k[2] <= order
        }
        for k, v in other._terms.items():
            if order is not None and k[2] > order:
                continue
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return WeylElement._raw(self.dim, out, order)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.dim, {k: -v for k, v in self._terms.items()}, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylElement.scalar(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return WeylElement.zero(self.dim, self.order)
        return WeylElement._raw(self.dim, {k: c * v for k, v in self._terms.items()}, self.order)

    def shift_t(self, k: int = 1) -> "WeylElement":
        """Multiply by t^k (truncation order unchanged)."""
        out = {}
        for (a, b, d), v in self._terms.items():
            if self.order is None or d + k <= self.order:
                out[(a, b, d + k)] = v
        return WeylElement._raw(self.dim, out, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return normal_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = WeylElement.scalar(self.dim, 1, self.order)
        for _ in range(k):
            out = out * self
        return out

    # rendering

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))

    def canonical_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b, d), c in self.sorted_terms():
            factors = [_power(f"x{i + 1}", e) for i, e in enumerate(a) if e]
            factors += [_power(f"d{i + 1}", e) for i, e in enumerate(b) if e]
            if d:
                factors.append(_power("t", d))
            coef = format_rational(c)
            parts.append(f"{coef} · {' '.join(factors)}" if factors else coef)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __str__(self):
        return self.canonical_text()

    def __repr__(self):
        return f"WeylElement(dim={self.dim}, order={self.order}, {self.canonical_text()})"


def _power(sym: str, e: int) -> str:
    return sym if e == 1 else f"{sym}^{e}"


def normal_mul(u: WeylElement, v: WeylElement) -> WeylElement:
    """Product u*v in normal order, truncated at min(order_u, order_v)."""
    u._check(v)
    order = _min_order(u.order, v.order)
    if not u._terms or not v._terms:
        return WeylElement._raw(u.dim, {}, order)
    by_deg: dict[int, list] = defaultdict(list)
    for (a2, b2, d2), c2 in v._terms.items():
        by_deg[d2].append((a2, b2, c2))
    v_degs = sorted(by_deg)
    zero = (0,) * u.dim
    out: dict[Key, Fraction] = defaultdict(Fraction)
    for (a1, b1, d1), c1 in u._terms.items():
        b1_trivial = b1 == zero
        for d2 in v_degs:
            d = d1 + d2
            if order is not None and d > order:
                break
            for a2, b2, c2 in by_deg[d2]:
                c = c1 * c2
                if b1_trivial or a2 == zero:
                    out[(_add(a1, a2), _add(b1, b2), d)] += c
                    continue
                for ra, rb, rc in _reorder(b1, a2):
                    out[(_add(a1, ra), _add(rb, b2), d)] += c * rc
    return WeylElement._raw(u.dim, {k: c for k, c in out.items() if c}, order)


def commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return normal_mul(u, v) - normal_mul(v, u)


def _reordered_sum(dim: int, order, pieces: Iterable[tuple[Exp, Exp, int, Fraction]]) -> WeylElement:
    """Sum of c * d^b x^a t^d over pieces (b, a, d, c), normal ordered."""
    out: dict[Key, Fraction] = defaultdict(Fraction)
    for b, a, d, c in pieces:
        for ra, rb, rc in _reorder(b, a):
            out[(ra, rb, d)] += c * rc
    return WeylElement._raw(dim, {k: c for k, c in out.items() if c}, order)


def dagger(u: WeylElement) -> WeylElement:
    """Linear antiautomorphism x -> x, d -> -d, order of factors reversed."""
    return _reordered_sum(
        u.dim, u.order, ((b, a, d, -c if sum(b) % 2 else c) for (a, b, d), c in u._terms.items())
    )


def swap_automorphism(u: WeylElement) -> WeylElement:
    """Automorphism x_i -> -d^i, d^i -> x_i: x^a d^b becomes (-1)^|a| d^a x^b."""
    return _reordered_sum(
        u.dim, u.order, ((a, b, d, -c if sum(a) % 2 else c) for (a, b, d), c in u._terms.items())
    )


def delta_derivative(u: WeylElement, rho: int) -> WeylElement:
    """Partial derivative in the commuting variable d^rho; u must be x-free."""
    if not 1 <= rho <= u.dim:
        raise ValueError(f"index {rho} out of range 1..{u.dim}")
    if not u.is_x_free():
        raise ValueError("delta_derivative applies to d-only elements")
    r = rho - 1
    out = {}
    for (a, b, d), c in u._terms.items():
        e = b[r]
        if e:
            nb = b[:r] + (e - 1,) + b[r + 1:]
            out[(a, nb, d)] = c * e
    return WeylElement._raw(u.dim, out, u.order)


def substitute_d(u: WeylElement, matrix: Sequence[Sequence]) -> WeylElement:
    """Linear change d^k -> sum_j matrix[k][j] d^j on a d-only element."""
    if not u.is_x_free():
        raise ValueError("substitution applies to d-only elements")
    n = u.dim
    images = [
        WeylElement(n, {((0,) * n, tuple(1 if i == j else 0 for i in range(n)), 0): matrix[k][j] for j in range(n)})
        for k in range(n)
    ]
    total = WeylElement.zero(n, u.order)
    powers: dict[tuple[int, int], WeylElement] = {}

    def power(k: int, e: int) -> WeylElement:
        if (k, e) not in powers:
            powers[(k, e)] = images[k] ** e
        return powers[(k, e)]

    for (a, b, d), c in u._terms.items():
        term = WeylElement.scalar(n, c, None, d)
        for k, e in enumerate(b):
            if e:
                term = term * power(k, e)
        total = total + term
    return total.truncate(u.order)
