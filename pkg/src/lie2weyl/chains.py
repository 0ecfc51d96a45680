"""Formal Z/M/b-chain calculus and its concrete instantiation on real algebras.

Order N chains have labels (l, m, k) with l + m + k + 1 = N.  Abstractly a
chain expression is a coefficient vector over b_0..b_{N-1} or M_0..M_{N-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .exact import beta, matrix_rank
from .lie import StructureConstants
from .realization import c_matrix, identity_matrix, matrix_mul
from .weyl import WeylElement, delta_derivative, normal_mul

__all__ = [
    "ChainExpr",
    "binom",
    "chain_labels",
    "chain_reduce",
    "m_to_b",
    "k_sum",
    "k_sum_unfolded",
    "k_sum_from_chains",
    "special_symmetry",
    "symmetry_difference",
    "symmetry_expansion_check",
    "special_symmetries_rank",
    "jsi_check",
    "jsi_sides",
    "z_dimension",
    "z_dimension_presented",
    "even_order_vector",
    "alpha_closed_form",
    "even_order_check",
    "ConcreteTensors",
    "concrete_tensor_check",
]


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class ChainExpr:
    order: int
    kind: str
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in ("b", "M"):
            raise ValueError("kind must be 'b' or 'M'")
        if len(self.coefficients) != self.order:
            raise ValueError("need one coefficient per chain index")

    @classmethod
    def zero(cls, N: int, kind: str) -> "ChainExpr":
        return cls(N, kind, (Fraction(0),) * N)

    @classmethod
    def basis(cls, N: int, kind: str, i: int, c=1) -> "ChainExpr":
        v = [Fraction(0)] * N
        v[i] = Fraction(c)
        return cls(N, kind, tuple(v))

    def _same(self, other: "ChainExpr") -> None:
        if (self.order, self.kind) != (other.order, other.kind):
            raise ValueError("chain expressions of different order or kind")

    def __add__(self, other: "ChainExpr") -> "ChainExpr":
        self._same(other)
        return ChainExpr(self.order, self.kind, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "ChainExpr") -> "ChainExpr":
        return self + other.scale(-1)

    def scale(self, c) -> "ChainExpr":
        c = Fraction(c)
        return ChainExpr(self.order, self.kind, tuple(c * a for a in self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def reduced(self) -> "ChainExpr":
        """b-kind only: fold b_i onto b_{N-1-i} for i > (N-1)//2."""
        if self.kind != "b":
            raise ValueError("only b-chains have the folding symmetry")
        N = self.order
        v = list(self.coefficients)
        for i in range((N - 1) // 2 + 1, N):
            v[N - 1 - i] += v[i]
            v[i] = Fraction(0)
        return ChainExpr(N, "b", tuple(v))

    def terms(self) -> dict[int, Fraction]:
        return {i: c for i, c in enumerate(self.coefficients) if c}


def chain_labels(N: int) -> list[tuple[int, int, int]]:
    return [(l, m, N - 1 - l - m) for l in range(N) for m in range(N - l)]


def chain_reduce(l: int, m: int, k: int, target: str) -> ChainExpr:
    """Z^{l,m,k} via recursion lowering m (M-chains) or lowering k (b-chains)."""
    if min(l, m, k) < 0:
        raise ValueError("labels must be non-negative")
    N = l + m + k + 1
    v = [Fraction(0)] * N
    if target == "M":
        for j in range(m + 1):
            v[l + j] += (-1) ** j * comb(m, j)
    elif target == "b":
        for j in range(k + 1):
            v[l + j] += comb(k, j)
    else:
        raise ValueError("target must be 'b' or 'M'")
    return ChainExpr(N, target, tuple(v))


def m_to_b(expr: ChainExpr) -> ChainExpr:
    """Rewrite M-chains as b-chains: M_l = sum_i C(N-1-l, i) b_i."""
    if expr.kind == "b":
        return expr
    N = expr.order
    v = [Fraction(0)] * N
    for l, c in enumerate(expr.coefficients):
        if c:
            for i in range(N - l):
                v[i] += c * comb(N - 1 - l, i)
    return ChainExpr(N, "b", tuple(v))


def k_sum_unfolded(I: int, N: int) -> ChainExpr:
    """K_{I,N-I} = sum_{i<I} C(I,i) b_i before folding (any 1 <= I <= N)."""
    v = [Fraction(0)] * N
    for i in range(I):
        v[i] = Fraction(comb(I, i))
    return ChainExpr(N, "b", tuple(v))


def k_sum(I: int, N: int) -> ChainExpr:
    """Reduced b-vector of K_{I,N-I}; I = 0 means the sum M_0 + ... + M_{N-1}."""
    if N < 1 or I < 0 or I > N // 2:
        raise ValueError(f"I must satisfy 0 <= I <= N/2 (got I={I}, N={N})")
    if I > 0:
        return k_sum_unfolded(I, N).reduced()
    v = [Fraction(0)] * N
    if N % 2:
        v[(N - 1) // 2] += comb(N, (N + 1) // 2)
    for i in range(N // 2):
        v[i] += comb(N + 1, i + 1)
    return ChainExpr(N, "b", tuple(v))


def k_sum_from_chains(I: int, N: int) -> ChainExpr:
    """Definitional route: sum_{l<I} Z^{l,N-I,I-l-1}, or sum of all M_k when I = 0."""
    if I == 0:
        total = ChainExpr.zero(N, "b")
        for k in range(N):
            total = total + chain_reduce(k, 0, N - 1 - k, "b")
        return total.reduced()
    total = ChainExpr.zero(N, "b")
    for l in range(I):
        total = total + chain_reduce(l, N - I, I - l - 1, "b")
    return total.reduced()


def symmetry_difference(j: int, s: int, N: int) -> ChainExpr:
    """X^{(s)}_j = Z^{j,j+s,*} - Z^{j+s,j,*} in M-chains, * = N - 2j - s - 1."""
    rest = N - 2 * j - s - 1
    if j < 0 or s < 0 or rest < 0:
        raise ValueError(f"labels out of range for N={N}: j={j}, s={s}")
    return chain_reduce(j, j + s, rest, "M") - chain_reduce(j + s, j, rest, "M")


def special_symmetry(k: int, N: int) -> ChainExpr:
    """X_k = Z^{k,k+1,N-2k-2} - Z^{k+1,k,N-2k-2} (M-chains)."""
    return symmetry_difference(k, 1, N)


def symmetry_expansion_check(j: int, s: int, N: int) -> bool:
    """X^{(s)}_j = sum_{k <= (s-1)/2} (-1)^k C(s-k-1, k) X_{j+k}."""
    lhs = symmetry_difference(j, s, N)
    rhs = ChainExpr.zero(N, "M")
    for k in range((s - 1) // 2 + 1) if s >= 1 else ():
        rhs = rhs + special_symmetry(j + k, N).scale((-1) ** k * comb(s - k - 1, k))
    return lhs == rhs


def special_symmetries_rank(N: int) -> tuple[int, int]:
    """(rank, count) of the coefficient rows of X_0 .. X_{(N-2)//2}."""
    rows = [list(special_symmetry(k, N).coefficients) for k in range((N - 2) // 2 + 1)]
    return (matrix_rank(rows) if rows else 0), len(rows)


def jsi_sides(j: int, s: int, i: int) -> tuple[int, int]:
    lhs = binom(j + s, i) - (-1) ** s * binom(j, i - s)
    rhs = sum(
        binom(s - k - 1, k) * (binom(j + k + 1, i - k) + binom(j + k, i - k - 1))
        for k in range((s - 1) // 2 + 1)
    )
    return lhs, rhs


def jsi_check(j: int, s: int, i: int) -> bool:
    """C(j+s,i) - (-1)^s C(j,i-s) = sum_k C(s-k-1,k) [C(j+k+1,i-k) + C(j+k,i-k-1)]."""
    lhs, rhs = jsi_sides(j, s, i)
    return lhs == rhs


def z_dimension(N: int) -> int:
    """Rank of the span of all reduced Z^{l,m,k} inside the folded b-module."""
    if N < 1:
        raise ValueError("N must be >= 1")
    rows = [list(chain_reduce(l, m, k, "b").reduced().coefficients) for l, m, k in chain_labels(N)]
    return matrix_rank(rows)


def z_dimension_presented(N: int) -> int:
    """#symbols F^{l,m,k} minus the rank of the symmetry and central relations."""
    labels = chain_labels(N)
    index = {lab: r for r, lab in enumerate(labels)}
    rels = []

    def row(pairs: Iterable[tuple[tuple[int, int, int], int]]) -> list[int]:
        v = [0] * len(labels)
        for lab, c in pairs:
            v[index[lab]] += c
        return v

    for l, m, k in labels:
        if l != m:
            rels.append(row([((l, m, k), 1), ((m, l, k), -1)]))
    # Z^{l,m+1,k} + Z^{l+1,m,k} - Z^{l,m,k+1} = 0 at total N
    for l in range(N):
        for m in range(N):
            k = N - 2 - l - m
            if k >= 0:
                rels.append(row([((l, m + 1, k), 1), ((l + 1, m, k), 1), ((l, m, k + 1), -1)]))
    return len(labels) - (matrix_rank(rels) if rels else 0)


def even_order_vector(N: int) -> ChainExpr:
    """beta_N K_{0,N} + sum_{k=1}^{N/2-1} beta_2k beta_{N-2k} K_{2k,N-2k}, reduced b-vector."""
    if N % 2 or N < 4:
        raise ValueError("N must be even and >= 4")
    total = k_sum(0, N).scale(beta(N))
    for k in range(1, N // 2):
        # K_{2k,N-2k} for 2k past N/2 is not K_{N-2k,2k}; use the unfolded sum
        total = total + k_sum_unfolded(2 * k, N).reduced().scale(beta(2 * k) * beta(N - 2 * k))
    return total


def alpha_closed_form(N: int, i: int) -> Fraction:
    """Coefficient alpha_i in its two-sum form (should vanish for 0 <= i <= N/2 - 1)."""
    s1 = sum(
        (beta(2 * k) * beta(N - 2 * k) * binom(N - 2 * k, i) for k in range(N // 2 - i // 2)),
        Fraction(0),
    )
    s2 = sum(
        (beta(2 * l) * beta(N - 2 * l) * binom(N - 2 * l, i - 2 * l + 1) for l in range(i // 2 + 1)),
        Fraction(0),
    )
    return s1 + s2


def even_order_check(N: int) -> bool:
    vec = even_order_vector(N)
    return vec.is_zero() and all(alpha_closed_form(N, i) == 0 for i in range(N // 2))


class ConcreteTensors:
    """Concrete Z-tensors of one algebra as d-only WeylElements indexed (g, mu, nu)."""

    def __init__(self, C: StructureConstants, max_power: int):
        self.C = C
        self.n = C.dim
        cm = c_matrix(C)
        self.powers = [identity_matrix(self.n)]
        for _ in range(max_power):
            self.powers.append(matrix_mul(self.powers[-1], cm))
        self._scal = [
            [[WeylElement.scalar(self.n, C.table[a][b][c], None, 1) for c in range(self.n)] for b in range(self.n)]
            for a in range(self.n)
        ]

    def power(self, L: int):
        while L >= len(self.powers):
            self.powers.append(matrix_mul(self.powers[-1], self.powers[1]))
        return self.powers[L]

    def z(self, l: int, m: int, k: int, g: int, mu: int, nu: int) -> WeylElement:
        """(C^l)^a_mu (C^m)^b_nu C^c_{ab} (C^k)^g_c - (mu <-> nu)."""
        Pl, Pm, Pk = self.power(l), self.power(m), self.power(k)
        n = self.n
        acc = WeylElement.zero(n)
        for c in range(n):
            if not Pk[g][c]:
                continue
            inner = WeylElement.zero(n)
            for a in range(n):
                for b in range(n):
                    s = self.C.table[a][b][c]
                    if not s:
                        continue
                    p = normal_mul(Pl[a][mu], Pm[b][nu]) - normal_mul(Pl[a][nu], Pm[b][mu])
                    if p:
                        inner = inner + p.scale(s)
            if inner:
                acc = acc + normal_mul(inner, Pk[g][c]).shift_t()
        return acc

    def b(self, i: int, N: int, g: int, mu: int, nu: int) -> WeylElement:
        return self.z(i, N - i - 1, 0, g, mu, nu)

    def M(self, i: int, N: int, g: int, mu: int, nu: int) -> WeylElement:
        return self.z(i, 0, N - i - 1, g, mu, nu)

    def k(self, I: int, N: int, g: int, mu: int, nu: int) -> WeylElement:
        """[d_r (C^I)^g_mu] (C^{N-I})^r_nu - (mu <-> nu)."""
        PI, PJ = self.power(I), self.power(N - I)
        acc = WeylElement.zero(self.n)
        for r in range(self.n):
            acc = acc + normal_mul(delta_derivative(PI[g][mu], r + 1), PJ[r][nu])
            acc = acc - normal_mul(delta_derivative(PI[g][nu], r + 1), PJ[r][mu])
        return acc

    def instantiate(self, expr: ChainExpr, g: int, mu: int, nu: int) -> WeylElement:
        acc = WeylElement.zero(self.n)
        for i, c in expr.terms().items():
            base = self.b(i, expr.order, g, mu, nu) if expr.kind == "b" else self.M(i, expr.order, g, mu, nu)
            acc = acc + base.scale(c)
        return acc

    def _scalar_c(self, mu: int, nu: int, s: int) -> Fraction:
        return self.C.table[mu][nu][s]

    def shiftd(self, L: int, g: int, mu: int, nu: int) -> bool:
        """C^r_nu C^*_{mu r} (C^L)^g_* - (mu <-> nu) = C^s_{mu nu} (C^{L+1})^g_s."""
        n = self.n
        C1, PL, PL1 = self.power(1), self.power(L), self.power(L + 1)
        lhs = WeylElement.zero(n)
        for r in range(n):
            for a in range(n):
                if not PL[g][a]:
                    continue
                c1 = self.C.table[mu][r][a]
                c2 = self.C.table[nu][r][a]
                if c1 and C1[r][nu]:
                    lhs = lhs + normal_mul(C1[r][nu], PL[g][a]).scale(c1).shift_t()
                if c2 and C1[r][mu]:
                    lhs = lhs - normal_mul(C1[r][mu], PL[g][a]).scale(c2).shift_t()
        rhs = WeylElement.zero(n)
        for s in range(n):
            c = self.C.table[mu][nu][s]
            if c:
                rhs = rhs + PL1[g][s].scale(c).shift_t()
        return lhs == rhs

    def ensures_odd(self, L: int, g: int, mu: int, nu: int) -> bool:
        """C^g_{mu r}(C^L)^r_nu + C^r_nu d_r (C^L)^g_mu - (mu <-> nu) = 2 C^s_{mu nu}(C^L)^g_s."""
        n = self.n
        C1, PL = self.power(1), self.power(L)
        lhs = WeylElement.zero(n)
        for (m1, m2, sign) in ((mu, nu, 1), (nu, mu, -1)):
            part = WeylElement.zero(n)
            for r in range(n):
                c = self.C.table[m1][r][g]
                if c and PL[r][m2]:
                    part = part + PL[r][m2].scale(c).shift_t()
                if C1[r][m2]:
                    dr = delta_derivative(PL[g][m1], r + 1)
                    if dr:
                        part = part + normal_mul(C1[r][m2], dr)
            lhs = lhs + part.scale(sign)
        rhs = WeylElement.zero(n)
        for s in range(n):
            c = self.C.table[mu][nu][s]
            if c:
                rhs = rhs + PL[g][s].scale(2 * c).shift_t()
        return lhs == rhs


def _triples(n: int):
    return [(g, mu, nu) for g in range(n) for mu in range(n) for nu in range(n) if mu != nu]


def concrete_tensor_check(C: StructureConstants, N: int, which: str) -> bool:
    """Concrete checks on real structure constants.

    ``shiftd`` / ``ensuresOdd`` run for every L <= N; ``chain-consistency``
    compares Z^{l,m,k} with its b- and M-chain expansions and its symmetry
    at order N; ``k-sums`` compares the derivative form of K_{I,N-I} with its
    b-chain sum for 1 <= I <= N; ``su2-equal`` asks whether
    M_0/2 = M_1 = ... = M_{N-1} componentwise.  M_0 carries both orientations
    of the central node, so its single-orientation half is what the other
    chains are compared against.
    """
    n = C.dim
    T = ConcreteTensors(C, N + 1)
    if which == "shiftd":
        return all(T.shiftd(L, *tr) for L in range(N + 1) for tr in _triples(n))
    if which == "ensuresOdd":
        return all(T.ensures_odd(L, *tr) for L in range(N + 1) for tr in _triples(n))
    if which == "chain-consistency":
        if N < 1:
            raise ValueError("N must be >= 1")
        for l, m, k in chain_labels(N):
            for tr in _triples(n):
                z = T.z(l, m, k, *tr)
                if z != T.instantiate(chain_reduce(l, m, k, "b"), *tr):
                    return False
                if z != T.instantiate(chain_reduce(l, m, k, "M"), *tr):
                    return False
                if z != T.z(m, l, k, *tr):
                    return False
        return True
    if which == "k-sums":
        for I in range(1, N + 1):
            expr = k_sum_unfolded(I, N)
            for tr in _triples(n):
                if T.k(I, N, *tr) != T.instantiate(expr, *tr):
                    return False
        return True
    if which == "su2-equal":
        if N < 1:
            raise ValueError("N must be >= 1")
        for tr in _triples(n):
            first = T.M(0, N, *tr).scale(Fraction(1, 2))
            if N == 1:
                continue
            if any(T.M(i, N, *tr) != first for i in range(1, N)):
                return False
        return True
    raise ValueError(f"unknown concrete check {which!r}")
