"""Independent route to phi through the enveloping algebra.

PBW monomials z_1^a1 ... z_n^an carry a bracket-degree d: every use of
[z_k, z_j] = C^m_{kj} z_m adds one, mirroring the t-grading of the Weyl side.
Symmetric-algebra elements are plain dicts ``{(exponents, d): coefficient}``.
"""

from __future__ import annotations

import random
import threading
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .exact import Polynomial, bernoulli
from .lie import StructureConstants
from .weyl import WeylElement, _min_order

__all__ = [
    "PBWAlgebra",
    "PBWElement",
    "SharpMap",
    "monomials_up_to",
    "pbw_mul",
    "coexp",
    "coexp_inverse",
    "coderivation_sharp",
    "coderivation_apply",
    "dhxn_check",
    "polarized_sharp_check",
    "teq_check",
    "phi_from_oracle",
    "exp_tangent_check",
]

Exp = tuple[int, ...]
SymElement = dict[tuple[Exp, int], Fraction]


def _sub1(a: Exp, i: int) -> Exp:
    return a[:i] + (a[i] - 1,) + a[i + 1:]


def _add1(a: Exp, i: int) -> Exp:
    return a[:i] + (a[i] + 1,) + a[i + 1:]


def _budget_sub(budget: int | None, k: int) -> int | None:
    return None if budget is None else budget - k


class PBWAlgebra:
    """U(g) with PBW normal forms; caches straightening results."""

    _registry: dict = {}
    _registry_lock = threading.Lock()

    def __init__(self, C: StructureConstants):
        self.C = C
        self.dim = C.dim
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._coexp_cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def of(cls, C: StructureConstants) -> "PBWAlgebra":
        key = (C.dim, C.table)
        with cls._registry_lock:
            alg = cls._registry.get(key)
            if alg is None:
                alg = cls._registry[key] = cls(C)
            return alg

    # element constructors

    def element(self, terms: Mapping, order: int | None = None) -> "PBWElement":
        return PBWElement(self, terms, order)

    def one(self, order: int | None = None) -> "PBWElement":
        return PBWElement(self, {((0,) * self.dim, 0): 1}, order)

    def gen(self, i: int, order: int | None = None, d: int = 0) -> "PBWElement":
        """z_i (1-based), optionally placed at bracket-degree d."""
        e = tuple(1 if r == i - 1 else 0 for r in range(self.dim))
        return PBWElement(self, {(e, d): 1}, order)

    def linear(self, coeffs: Sequence, order: int | None = None, d: int = 0) -> "PBWElement":
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = tuple(1 if r == i else 0 for r in range(self.dim))
                terms[(e, d)] = c
        return PBWElement(self, terms, order)

    # straightening

    def right_mul_gen(self, a: Exp, j: int, budget: int | None) -> dict[tuple[Exp, int], Fraction]:
        """z^a * z_j in normal form, as {(exponents, extra bracket-degree): coef}."""
        key = (a, j, budget)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        k = max((i for i, e in enumerate(a) if e), default=-1)
        if k <= j:
            res = {(_add1(a, j), 0): Fraction(1)}
        else:
            # z^a' z_k z_j = (z^a' z_j) z_k + sum_m C^m_{kj} z^a' z_m
            ap = _sub1(a, k)
            out: dict[tuple[Exp, int], Fraction] = defaultdict(Fraction)
            for (b, e), c in self.right_mul_gen(ap, j, budget).items():
                for (b2, e2), c2 in self.right_mul_gen(b, k, _budget_sub(budget, e)).items():
                    out[(b2, e + e2)] += c * c2
            if budget is None or budget >= 1:
                row = self.C.table[k][j]
                for m in range(self.dim):
                    if row[m]:
                        for (b, e), c in self.right_mul_gen(ap, m, _budget_sub(budget, 1)).items():
                            out[(b, e + 1)] += row[m] * c
            res = {key2: v for key2, v in out.items() if v}
        with self._lock:
            self._gen_cache[key] = res
        return res

    def mono_mul(self, a: Exp, b: Exp, budget: int | None) -> dict[tuple[Exp, int], Fraction]:
        key = (a, b, budget)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        cur: dict[tuple[Exp, int], Fraction] = {(a, 0): Fraction(1)}
        for j, e in enumerate(b):
            for _ in range(e):
                nxt: dict[tuple[Exp, int], Fraction] = defaultdict(Fraction)
                for (m, dd), c in cur.items():
                    for (m2, d2), c2 in self.right_mul_gen(m, j, _budget_sub(budget, dd)).items():
                        nxt[(m2, dd + d2)] += c * c2
                cur = {k: v for k, v in nxt.items() if v}
        with self._lock:
            self._mono_cache[key] = cur
        return cur

    def mul(self, u: "PBWElement", v: "PBWElement") -> "PBWElement":
        if u.algebra is not v.algebra:
            if u.algebra.dim != v.algebra.dim:
                raise ValueError(f"dimension mismatch: {u.algebra.dim} vs {v.algebra.dim}")
            raise ValueError("elements belong to different algebras")
        order = _min_order(u.order, v.order)
        out: dict[tuple[Exp, int], Fraction] = defaultdict(Fraction)
        for (a, d1), c1 in u.terms.items():
            for (b, d2), c2 in v.terms.items():
                base = d1 + d2
                if order is not None and base > order:
                    continue
                budget = None if order is None else order - base
                for (m, e), c in self.mono_mul(a, b, budget).items():
                    out[(m, base + e)] += c1 * c2 * c
        return PBWElement(self, out, order)

    # coexponential map

    def coexp_mono(self, a: Exp, order: int | None = None) -> "PBWElement":
        """Symmetrization of x^a: xi(x^a) = (1/|a|) sum_i a_i z_i xi(x^(a - e_i))."""
        key = (a, order)
        hit = self._coexp_cache.get(key)
        if hit is not None:
            return hit
        deg = sum(a)
        if deg == 0:
            res = self.one(order)
        else:
            acc = PBWElement(self, {}, order)
            for i, e in enumerate(a):
                if e:
                    acc = acc + (self.gen(i + 1, order) * self.coexp_mono(_sub1(a, i), order)).scale(
                        Fraction(e, deg)
                    )
            res = acc
        with self._lock:
            self._coexp_cache[key] = res
        return res


class PBWElement:
    """Sparse element of U(g) in PBW normal form, known up to bracket-degree ``order``."""

    __slots__ = ("algebra", "order", "terms")

    def __init__(self, algebra: PBWAlgebra, terms: Mapping, order: int | None = None):
        self.algebra = algebra
        self.order = order
        clean = {}
        for (a, d), c in terms.items():
            if order is not None and d > order:
                continue
            c = Fraction(c)
            if c:
                clean[(tuple(a), d)] = c
        self.terms: dict[tuple[Exp, int], Fraction] = clean

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __add__(self, other: "PBWElement") -> "PBWElement":
        order = _min_order(self.order, other.order)
        out: dict = defaultdict(Fraction)
        for k, v in self.terms.items():
            out[k] += v
        for k, v in other.terms.items():
            out[k] += v
        return PBWElement(self.algebra, out, order)

    def __neg__(self):
        return PBWElement(self.algebra, {k: -v for k, v in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PBWElement":
        c = Fraction(c)
        return PBWElement(self.algebra, {k: c * v for k, v in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, order: int | None) -> "PBWElement":
        return PBWElement(self.algebra, self.terms, _min_order(self.order, order))

    def degree_zero_part(self) -> dict[Exp, Fraction]:
        return {a: c for (a, d), c in self.terms.items() if d == 0}

    def __repr__(self):
        return f"PBWElement(order={self.order}, {dict(sorted(self.terms.items()))})"


def pbw_mul(u: PBWElement, v: PBWElement) -> PBWElement:
    return u.algebra.mul(u, v)


def monomials_up_to(n: int, D: int) -> list[Exp]:
    """All exponent vectors of total degree <= D, by degree then lexicographic."""
    out = []
    for deg in range(D + 1):
        degs = []
        for combo in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in combo:
                e[i] += 1
            degs.append(tuple(e))
        out.extend(sorted(set(degs), reverse=True))
    return out


def coexp(C: StructureConstants, a: Sequence[int], order: int | None = None) -> PBWElement:
    return PBWAlgebra.of(C).coexp_mono(tuple(a), order)


def coexp_inverse(u: PBWElement, D: int) -> SymElement:
    """Triangular elimination: peel the top polynomial degree using xi(x^a) = z^a + lower."""
    alg = u.algebra
    work: dict[tuple[Exp, int], Fraction] = dict(u.terms)
    for (a, _d) in work:
        if sum(a) > D:
            raise ValueError(f"term of degree {sum(a)} exceeds bound {D}")
    result: SymElement = {}
    while work:
        (a, d), c = max(work.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], -kv[0][1]))
        result[(a, d)] = result.get((a, d), Fraction(0)) + c
        budget = None if u.order is None else u.order - d
        for (b, e), c2 in alg.coexp_mono(a, budget).terms.items():
            key = (b, d + e)
            v = work.get(key, Fraction(0)) - c * c2
            if v:
                work[key] = v
            else:
                work.pop(key, None)
    return {k: v for k, v in result.items() if v}


def _sym_from_linear(vec: Sequence[Fraction], d: int) -> SymElement:
    n = len(vec)
    return {(tuple(1 if r == i else 0 for r in range(n)), d): Fraction(c) for i, c in enumerate(vec) if c}


def _sym_mul(u: SymElement, v: SymElement) -> SymElement:
    out: dict = defaultdict(Fraction)
    for (a, d1), c1 in u.items():
        for (b, d2), c2 in v.items():
            out[(tuple(x + y for x, y in zip(a, b)), d1 + d2)] += c1 * c2
    return {k: c for k, c in out.items() if c}


def _sym_add(u: SymElement, v: SymElement, scale=1) -> SymElement:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, Fraction(0)) + scale * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def coderivation_apply(C: StructureConstants, h: int, u: PBWElement, D: int, invariance: str = "right") -> SymElement:
    """D_h on xi(m) given as u = xi(m): xi^-1(z_h u) (right) or xi^-1(u z_h) (left)."""
    alg = PBWAlgebra.of(C)
    zh = alg.gen(h, u.order)
    if invariance == "right":
        v = zh * u
    elif invariance == "left":
        v = u * zh
    else:
        raise ValueError("invariance must be 'right' or 'left'")
    return coexp_inverse(v, D + 1)


@dataclass(frozen=True)
class SharpMap:
    """Degree-1 projection of D_h on every monomial of degree <= max_degree."""

    h: int
    max_degree: int
    invariance: str
    table: dict[Exp, tuple[Fraction, ...]]

    def __getitem__(self, a: Sequence[int]) -> tuple[Fraction, ...]:
        return self.table[tuple(a)]


def coderivation_sharp(C: StructureConstants, h: int, D: int, invariance: str = "right") -> SharpMap:
    if D < 0:
        raise ValueError("D must be >= 0")
    n = C.dim
    alg = PBWAlgebra.of(C)
    table: dict[Exp, tuple[Fraction, ...]] = {}
    for a in monomials_up_to(n, D):
        deg = sum(a)
        img = coderivation_apply(C, h, alg.coexp_mono(a, deg), D, invariance)
        vec = [Fraction(0)] * n
        for (b, d), c in img.items():
            if sum(b) == 1:
                if d != deg:
                    raise AssertionError("sharp value off its expected bracket-degree")
                vec[b.index(1)] += c
        table[a] = tuple(vec)
    return SharpMap(h, D, invariance, table)


def _ad(C: StructureConstants, x: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    """[x, v] for coordinate vectors."""
    n = C.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            row = C.table[i][j]
            for m in range(n):
                if row[m]:
                    out[m] += x[i] * v[j] * row[m]
    return out


def _power_of_linear(x: Sequence[Fraction], p: int) -> SymElement:
    out: SymElement = {((0,) * len(x), 0): Fraction(1)}
    lin = _sym_from_linear(x, 0)
    for _ in range(p):
        out = _sym_mul(out, lin)
    return out


def dhxn_closed_form(C: StructureConstants, h: int, x: Sequence, n: int, invariance: str = "right") -> SymElement:
    """sum_k C(n,k) B_k x^(n-k) (ad x)^k h, with (-1)^k factors for the left variant."""
    x = [Fraction(c) for c in x]
    v = [Fraction(1 if i == h - 1 else 0) for i in range(C.dim)]
    out: SymElement = {}
    for k in range(n + 1):
        coef = comb(n, k) * bernoulli(k) * (-1 if invariance == "left" and k % 2 else 1)
        if coef and any(v):
            out = _sym_add(out, _sym_mul(_power_of_linear(x, n - k), _sym_from_linear(v, k)), coef)
        v = _ad(C, x, v)
    return out


def dhxn_check(
    C: StructureConstants, n_max: int, points: int = 3, seed: int = 0, invariance: str = "right"
) -> bool:
    """D_h(x^n) through xi agrees with the closed form at random rational x, every h, n <= n_max."""
    rng = random.Random(seed)
    alg = PBWAlgebra.of(C)
    dim = C.dim
    for _ in range(points):
        x = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim)]
        X = alg.linear(x)
        power = alg.one()
        for n in range(n_max + 1):
            for h in range(1, dim + 1):
                lhs = coderivation_apply(C, h, power, n_max, invariance)
                if lhs != dhxn_closed_form(C, h, x, n, invariance):
                    return False
            power = power * X
    return polarized_sharp_check(C, min(n_max, 3), invariance)


def polarized_sharp_check(C: StructureConstants, D: int, invariance: str = "right") -> bool:
    """n! sharp(x_{i1}...x_{in}) = B_n sum over orderings of ad(e_{i s1})...ad(e_{i sn}) h."""
    from itertools import permutations

    n = C.dim
    for h in range(1, n + 1):
        sharp = coderivation_sharp(C, h, D, invariance)
        for a in monomials_up_to(n, D):
            idx = [i for i, e in enumerate(a) for _ in range(e)]
            deg = len(idx)
            total = [Fraction(0)] * n
            for perm in permutations(idx):
                v = [Fraction(1 if i == h - 1 else 0) for i in range(n)]
                for i in reversed(perm):
                    v = _ad(C, [Fraction(1 if r == i else 0) for r in range(n)], v)
                total = [s + c for s, c in zip(total, v)]
            b = bernoulli(deg) * (-1 if invariance == "left" and deg % 2 else 1)
            expected = tuple(b * c for c in total)
            if tuple(factorial(deg) * c for c in sharp[a]) != expected:
                return False
    return True


def teq_check(n: int) -> bool:
    """T^n = sum_k C(n,k) B_(n-k)/(k+1) ((T+1)^(k+1) - T^(k+1))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    T = Polynomial([0, 1])
    rhs = Polynomial()
    for k in range(n + 1):
        a = comb(n, k) * bernoulli(n - k)
        rhs = rhs + ((T ** (k + 1)).shift(1) - T ** (k + 1)) * (a / Fraction(k + 1))
    return rhs == T ** n


def phi_from_oracle(C: StructureConstants, D: int) -> list[list[WeylElement]]:
    """Entry (i, j): sum_a sharp_j(x^a)_i / a! x^a t^|a|, an x-only series truncated at D."""
    if D < 0:
        raise ValueError("D must be >= 0")
    n = C.dim
    zero = (0,) * n
    out = [[None] * n for _ in range(n)]
    for j in range(n):
        sharp = coderivation_sharp(C, j + 1, D)
        cols: list[dict] = [{} for _ in range(n)]
        for a, vec in sharp.table.items():
            w = Fraction(1)
            for e in a:
                w /= factorial(e)
            for i, c in enumerate(vec):
                if c:
                    cols[i][(a, zero, sum(a))] = c * w
        for i in range(n):
            out[i][j] = WeylElement(n, cols[i], D)
    return out


def _exp_series(X: PBWElement, T: int) -> list[PBWElement]:
    """Powers X^p / p! for p <= T (X sits at bracket-degree >= 1)."""
    alg = X.algebra
    terms = [alg.one(T)]
    for p in range(1, T + 1):
        terms.append((terms[-1] * X).scale(Fraction(1, p)))
    return terms


def exp_tangent_check(C: StructureConstants, T: int, pairs: int = 3, seed: int = 0) -> bool:
    """exp(X + Y eps) = exp(X)(1 + Z eps) = (1 + Z' eps) exp(X), first order in eps.

    Z = sum_m (-ad X)^m Y/(m+1)!, Z' = sum_m (ad X)^m Y/(m+1)!; X is placed at
    bracket-degree 1 so every power of X is counted by the truncation.
    """
    alg = PBWAlgebra.of(C)
    n = C.dim
    rng = random.Random(seed)
    for _ in range(pairs):
        xs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
        ys = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
        X = alg.linear(xs, T, d=1)
        Y = alg.linear(ys, T)
        xpow = [alg.one(T)]
        for _p in range(T):
            xpow.append(xpow[-1] * X)
        # eps-part of exp(X + Y eps)
        lhs = PBWElement(alg, {}, T)
        for p in range(T + 1):
            for q in range(T + 1 - p):
                lhs = lhs + (xpow[p] * Y * xpow[q]).scale(Fraction(1, factorial(p + q + 1)))
        expx = _exp_series(X, T)
        E = PBWElement(alg, {}, T)
        for term in expx:
            E = E + term
        Z = PBWElement(alg, {}, T)
        Zp = PBWElement(alg, {}, T)
        ad_plus = Y
        for m in range(T + 1):
            w = Fraction(1, factorial(m + 1))
            Zp = Zp + ad_plus.scale(w)
            Z = Z + ad_plus.scale(w * (-1) ** m)
            ad_plus = X * ad_plus - ad_plus * X
        if E * Z != lhs or Zp * E != lhs:
            return False
    return True
