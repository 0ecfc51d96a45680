"""The matrix of d-linear forms, the Bernoulli series phi, and the generator images."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import bernoulli, format_rational
from .lie import StructureConstants
from .weyl import WeylElement, normal_mul, dagger

__all__ = [
    "PhiMatrix",
    "c_matrix",
    "matrix_mul",
    "matrix_power",
    "phi_coefficient",
    "phi_series",
    "realize",
    "x_times",
    "times_x",
    "realization_json",
]

Matrix = list[list[WeylElement]]


def c_matrix(C: StructureConstants, order: int | None = None) -> Matrix:
    """Entry (i, j) is sum_k C^i_{jk} d^k t (rows and columns 0-based here)."""
    n = C.dim
    zero = (0,) * n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            for k in range(n):
                v = C.table[j][k][i]
                if v:
                    b = tuple(1 if r == k else 0 for r in range(n))
                    terms[(zero, b, 1)] = v
            row.append(WeylElement(n, terms, order))
        rows.append(row)
    return rows


def identity_matrix(n: int, order: int | None = None) -> Matrix:
    return [[WeylElement.scalar(n, 1 if i == j else 0, order) for j in range(n)] for i in range(n)]


def matrix_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = None
            for k in range(n):
                if A[i][k] and B[k][j]:
                    p = normal_mul(A[i][k], B[k][j])
                    acc = p if acc is None else acc + p
            if acc is None:
                acc = WeylElement.zero(A[0][0].dim, _order_of(A, B))
            row.append(acc)
        out.append(row)
    return out


def _order_of(A: Matrix, B: Matrix) -> int | None:
    orders = [e.order for e in (A[0][0], B[0][0]) if e.order is not None]
    return min(orders) if orders else None


def matrix_power(M: Matrix, N: int) -> Matrix:
    out = identity_matrix(len(M), M[0][0].order)
    for _ in range(N):
        out = matrix_mul(out, M)
    return out


def phi_coefficient(N: int) -> Fraction:
    """(-1)^N B_N / N!, i.e. 1, 1/2, 1/12, 0, -1/720, ..."""
    return (-1) ** N * bernoulli(N) / factorial(N)


@dataclass(frozen=True)
class PhiMatrix:
    """phi^a_b as d-only WeylElements; ``entries[a][b]`` with 0-based indices."""

    dim: int
    order: int
    entries: tuple[tuple[WeylElement, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> WeylElement:
        i, j = ij
        return self.entries[i][j]

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.entries]


def phi_series(C: StructureConstants, T: int) -> PhiMatrix:
    """phi = sum_{N <= T} (-1)^N B_N/N! C^N, with C the matrix of d-forms."""
    if T < 0:
        raise ValueError("order must be >= 0")
    n = C.dim
    cm = c_matrix(C, T)
    power = identity_matrix(n, T)
    acc = [[e for e in row] for row in power]
    for N in range(1, T + 1):
        power = matrix_mul(power, cm)
        coef = phi_coefficient(N)
        if coef:
            acc = [[acc[i][j] + power[i][j].scale(coef) for j in range(n)] for i in range(n)]
    return PhiMatrix(n, T, tuple(tuple(r) for r in acc))


def x_times(phi: PhiMatrix, i: int) -> WeylElement:
    """sum_a x_a phi^a_i  (i 0-based)."""
    n = phi.dim
    acc = WeylElement.zero(n, phi.order)
    for a in range(n):
        acc = acc + normal_mul(WeylElement.x(n, a + 1, phi.order), phi.entries[a][i])
    return acc


def times_x(phi: PhiMatrix, i: int) -> WeylElement:
    """sum_a phi^a_i x_a, obtained as dagger(x_a * dagger(phi^a_i))."""
    n = phi.dim
    acc = WeylElement.zero(n, phi.order)
    for a in range(n):
        x = WeylElement.x(n, a + 1, phi.order)
        acc = acc + dagger(normal_mul(x, dagger(phi.entries[a][i])))
    return acc


def realize(C: StructureConstants, lam=1, T: int = 6) -> list[WeylElement]:
    """Images of X_1..X_n: lam * x.phi + (1 - lam) * phi.x."""
    lam = Fraction(lam)
    phi = phi_series(C, T)
    out = []
    for i in range(C.dim):
        img = WeylElement.zero(C.dim, T)
        if lam:
            img = img + x_times(phi, i).scale(lam)
        if lam != 1:
            img = img + times_x(phi, i).scale(1 - lam)
        out.append(img)
    return out


def realization_json(C: StructureConstants, lam, T: int) -> str:
    images = realize(C, lam, T)
    doc = {
        "algebra": C.name,
        "lambda": format_rational(Fraction(lam)),
        "order": T,
        "generators": [g.canonical_text() for g in images],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False)
