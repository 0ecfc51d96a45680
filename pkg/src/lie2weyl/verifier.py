"""Order-by-order checks that the realization is a Lie homomorphism, plus auxiliary identities."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import format_rational
from .lie import BasisTransform, StructureConstants, transform, validate
from .realization import (
    c_matrix,
    identity_matrix,
    matrix_mul,
    phi_coefficient,
    phi_series,
    realize,
    times_x,
    x_times,
)
from .weyl import WeylElement, commutator, delta_derivative, normal_mul, substitute_d

__all__ = [
    "PairResidual",
    "VerificationReport",
    "check_commutators",
    "check_pde",
    "check_order_condition",
    "check_lambda_reflection",
    "check_covariance",
]


@dataclass(frozen=True)
class PairResidual:
    mu: int
    nu: int
    residual: WeylElement


@dataclass
class VerificationReport:
    algebra: str | None
    lam: Fraction
    order: int
    pairs: list[PairResidual]
    gated: bool = True
    timing: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(p.residual.is_zero() for p in self.pairs)

    def first_failure(self) -> PairResidual | None:
        return next((p for p in self.pairs if not p.residual.is_zero()), None)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "lambda": format_rational(self.lam),
            "order": self.order,
            "pass": self.passed,
            "pairs": [
                {"mu": p.mu, "nu": p.nu, "residual": p.residual.canonical_text()} for p in self.pairs
            ],
        }

    def to_json(self) -> str:
        # timing is left out so identical runs give identical bytes
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _bracket_image(C: StructureConstants, images: list[WeylElement], mu: int, nu: int, T) -> WeylElement:
    """sum_r C^r_{mu nu} t Phi_r."""
    acc = WeylElement.zero(C.dim, T)
    for r in range(C.dim):
        c = C.table[mu][nu][r]
        if c:
            acc = acc + images[r].shift_t().scale(c)
    return acc


def _map_pairs(fn, pairs, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, pairs))
    return [fn(p) for p in pairs]


def check_commutators(C: StructureConstants, lam=1, T: int = 6, threads: int = 1) -> VerificationReport:
    """Residuals [Phi_mu, Phi_nu] - C^r_{mu nu} t Phi_r for mu < nu, modulo t^(T+1)."""
    lam = Fraction(lam)
    start = time.perf_counter()
    images = realize(C, lam, T)

    def residual(pair):
        mu, nu = pair
        r = commutator(images[mu], images[nu]) - _bracket_image(C, images, mu, nu, T)
        return PairResidual(mu + 1, nu + 1, r)

    pairs = _map_pairs(residual, _pairs(C.dim), threads)
    gated = lam == 1 or validate(C).totally_antisymmetric
    return VerificationReport(C.name, lam, T, pairs, gated, time.perf_counter() - start)


def check_pde(C: StructureConstants, T: int) -> bool:
    """(d_r phi^g_mu) phi^r_nu - (mu <-> nu) = C^s_{mu nu} t phi^g_s, for all g, mu, nu."""
    n = C.dim
    phi = phi_series(C, T).entries
    deriv = [[[delta_derivative(phi[g][m], r + 1) for r in range(n)] for m in range(n)] for g in range(n)]
    for mu, nu in _pairs(n):
        for g in range(n):
            lhs = WeylElement.zero(n, T)
            for r in range(n):
                lhs = lhs + normal_mul(deriv[g][mu][r], phi[r][nu]) - normal_mul(deriv[g][nu][r], phi[r][mu])
            rhs = WeylElement.zero(n, T)
            for s in range(n):
                c = C.table[mu][nu][s]
                if c:
                    rhs = rhs + phi[g][s].shift_t().scale(c)
            if lhs != rhs:
                return False
    return True


def check_order_condition(C: StructureConstants, N: int) -> bool:
    """Single-order identity: sum_{I=1}^N A_I A_{N-I} K_{I,N-I} = A_{N-1} C^s_{mu nu} (C^{N-1})^g_s."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = C.dim
    cm = c_matrix(C)
    powers = [identity_matrix(n)]
    for _ in range(N):
        powers.append(matrix_mul(powers[-1], cm))
    A = [phi_coefficient(k) for k in range(N + 1)]
    for mu, nu in _pairs(n):
        for g in range(n):
            lhs = WeylElement.zero(n)
            for I in range(1, N + 1):
                w = A[I] * A[N - I]
                if not w:
                    continue
                PI, PJ = powers[I], powers[N - I]
                k = WeylElement.zero(n)
                for r in range(n):
                    k = k + normal_mul(delta_derivative(PI[g][mu], r + 1), PJ[r][nu])
                    k = k - normal_mul(delta_derivative(PI[g][nu], r + 1), PJ[r][mu])
                lhs = lhs + k.scale(w)
            rhs = WeylElement.zero(n)
            for s in range(n):
                c = C.table[mu][nu][s]
                if c:
                    rhs = rhs + powers[N - 1][g][s].shift_t().scale(c * A[N - 1])
            if lhs != rhs:
                return False
    return True


def check_lambda_reflection(C: StructureConstants, T: int) -> bool:
    """[x.phi_mu, x.phi_nu] + [phi_mu.x, phi_nu.x] = [x.phi_mu, phi_nu.x] + [phi_mu.x, x.phi_nu]."""
    phi = phi_series(C, T)
    left = [x_times(phi, i) for i in range(C.dim)]
    right = [times_x(phi, i) for i in range(C.dim)]
    for mu, nu in _pairs(C.dim):
        lhs = commutator(left[mu], left[nu]) + commutator(right[mu], right[nu])
        rhs = commutator(left[mu], right[nu]) + commutator(right[mu], left[nu])
        if lhs != rhs:
            return False
    return True


def check_covariance(C: StructureConstants, O: BasisTransform, T: int) -> bool:
    """phi(C')(d -> O^-1 d) equals O^-1 phi(C) O, where C' is C in the new basis."""
    if O.dim != C.dim:
        raise ValueError(f"transform of dimension {O.dim} applied to algebra of dimension {C.dim}")
    n = C.dim
    M, Minv = O.matrix, O.inverse
    new_phi = phi_series(transform(C, O), T).entries
    old_phi = phi_series(C, T).entries
    for s in range(n):
        for r in range(n):
            lhs = substitute_d(new_phi[s][r], Minv)
            rhs = WeylElement.zero(n, T)
            for g in range(n):
                if not Minv[s][g]:
                    continue
                for a in range(n):
                    if M[a][r]:
                        rhs = rhs + old_phi[g][a].scale(Minv[s][g] * M[a][r])
            if lhs != rhs:
                return False
    return True
