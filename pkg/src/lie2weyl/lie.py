"""Structure constants, validation, the built-in catalog and basis changes.

Indices are 1-based in every public signature; ``C.c(i, j, k)`` is the
coefficient of e_k in [e_i, e_j].
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exact import format_rational, matrix_inverse, parse_rational

__all__ = [
    "AlgebraError",
    "StructureConstants",
    "ValidationReport",
    "BasisTransform",
    "validate",
    "catalog",
    "catalog_names",
    "CATALOG_SUITE",
    "transform",
    "parse_algebra",
    "serialize_algebra",
    "load_algebra",
    "random_transform",
]


class AlgebraError(ValueError):
    """Raised for malformed or invalid algebra input."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class StructureConstants:
    """C^k_{ij} as a dense rational tensor (``table[i][j][k]``, 0-based)."""

    dim: int
    table: tuple[tuple[tuple[Fraction, ...], ...], ...]
    name: str | None = None

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise AlgebraError("dimension must be positive")
        if len(self.table) != n or any(
            len(row) != n or any(len(col) != n for col in row) for row in self.table
        ):
            raise AlgebraError("structure tensor shape does not match dim")

    @classmethod
    def zero(cls, n: int, name: str | None = None) -> "StructureConstants":
        z = Fraction(0)
        return cls(n, tuple(tuple(tuple(z for _ in range(n)) for _ in range(n)) for _ in range(n)), name)

    @classmethod
    def from_dense(cls, values, name: str | None = None) -> "StructureConstants":
        n = len(values)
        tab = tuple(
            tuple(tuple(Fraction(values[i][j][k]) for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return cls(n, tab, name)

    @classmethod
    def from_brackets(
        cls, dim: int, brackets: Iterable[tuple[int, int, int, object]], name: str | None = None
    ) -> "StructureConstants":
        """Build from (i, j, k, value) entries with antisymmetric closure.

        Entries may be given for i > j; a pair that contradicts antisymmetry
        (or a nonzero diagonal entry) raises AlgebraError.
        """
        if dim < 1:
            raise AlgebraError("dimension must be positive")
        vals = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        seen: dict[tuple[int, int, int], Fraction] = {}
        for entry in brackets:
            if len(entry) != 4:
                raise AlgebraError(f"bracket entry must have 4 fields: {entry!r}")
            i, j, k, v = entry
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
                raise AlgebraError(f"bracket indices must be integers: {entry!r}")
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise AlgebraError(f"bracket index out of range: {entry!r}")
            q = parse_rational(v)
            if i == j:
                if q != 0:
                    raise AlgebraError("antisymmetry violated on the diagonal", (i, j, k))
                continue
            lo, hi, sign = (i, j, 1) if i < j else (j, i, -1)
            key = (lo, hi, k)
            val = sign * q
            if key in seen and seen[key] != val:
                raise AlgebraError("antisymmetry violated", (i, j, k))
            seen[key] = val
        for (i, j, k), v in seen.items():
            vals[i - 1][j - 1][k - 1] = v
            vals[j - 1][i - 1][k - 1] = -v
        return cls.from_dense(vals, name)

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.table[i - 1][j - 1][k - 1]

    @property
    def entries(self) -> dict[tuple[int, int, int], Fraction]:
        """Nonzero C^k_{ij} with i < j, 1-based."""
        n = self.dim
        out = {}
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    v = self.table[i][j][k]
                    if v:
                        out[(i + 1, j + 1, k + 1)] = v
        return out

    def is_abelian(self) -> bool:
        return not any(v for row in self.table for col in row for v in col)

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((self.dim, self.table))

    def __repr__(self):
        label = self.name or "unnamed"
        return f"StructureConstants({label!r}, dim={self.dim}, nonzero={len(self.entries)})"


@dataclass(frozen=True)
class ValidationReport:
    antisymmetric: bool
    jacobi: bool
    totally_antisymmetric: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.antisymmetric and self.jacobi


def validate(C: StructureConstants) -> ValidationReport:
    """Exhaustive antisymmetry, Jacobi and total-antisymmetry checks; never raises."""
    n, t = C.dim, C.table
    witnesses: dict[str, tuple] = {}

    anti = True
    for i, j, k in product(range(n), repeat=3):
        if t[i][j][k] != -t[j][i][k]:
            anti = False
            witnesses["antisymmetric"] = (i + 1, j + 1, k + 1)
            break

    jac = True
    for i, j, k, b in product(range(n), repeat=4):
        s = sum(
            (
                t[i][j][a] * t[a][k][b] + t[j][k][a] * t[a][i][b] + t[k][i][a] * t[a][j][b]
                for a in range(n)
            ),
            Fraction(0),
        )
        if s:
            jac = False
            witnesses["jacobi"] = (i + 1, j + 1, k + 1, b + 1)
            break

    # totally antisymmetric: T[i][j][k] = C^k_{ij} flips sign under every transposition
    total = anti
    if total:
        for i, j, k in product(range(n), repeat=3):
            v = t[i][j][k]
            if v != -t[i][k][j] or v != -t[k][j][i]:
                total = False
                witnesses["totally_antisymmetric"] = (i + 1, j + 1, k + 1)
                break
    elif "antisymmetric" in witnesses:
        witnesses["totally_antisymmetric"] = witnesses["antisymmetric"]
    return ValidationReport(anti, jac, total, witnesses)


def _sl2_brackets(offset: int = 0) -> list[tuple[int, int, int, int]]:
    # e1 = h, e2 = e, e3 = f
    o = offset
    return [(1 + o, 2 + o, 2 + o, 2), (1 + o, 3 + o, 3 + o, -2), (2 + o, 3 + o, 1 + o, 1)]


_FIXED = {
    "heisenberg3": (3, [(1, 2, 3, 1)]),
    "so3": (3, [(1, 2, 3, 1), (2, 3, 1, 1), (3, 1, 2, 1)]),
    "sl2": (3, _sl2_brackets()),
    # e1 = E12, e2 = E13, e3 = E23
    "ut3": (3, [(1, 3, 2, 1)]),
    # e1 = rotation J, e2, e3 = translations
    "e2": (3, [(1, 2, 3, 1), (1, 3, 2, -1)]),
}

CATALOG_SUITE = ("abelian:3", "heisenberg3", "so3", "sl2", "ut3", "e2", "sl2_plus_abelian:1")


def catalog_names() -> tuple[str, ...]:
    return ("abelian:n",) + tuple(_FIXED) + ("sl2_plus_abelian:m",)


def _suffix_int(name: str, prefix: str, minimum: int) -> int:
    tail = name[len(prefix):]
    if not tail.isdigit() or int(tail) < minimum:
        raise AlgebraError(f"bad catalog parameter in {name!r}")
    return int(tail)


def catalog(name: str) -> StructureConstants:
    if name in _FIXED:
        dim, br = _FIXED[name]
        return StructureConstants.from_brackets(dim, br, name)
    if name.startswith("abelian:"):
        n = _suffix_int(name, "abelian:", 1)
        return StructureConstants.zero(n, name)
    if name.startswith("sl2_plus_abelian:"):
        m = _suffix_int(name, "sl2_plus_abelian:", 0)
        return StructureConstants.from_brackets(3 + m, _sl2_brackets(), name)
    raise AlgebraError(f"unknown catalog algebra {name!r}")


@dataclass(frozen=True)
class BasisTransform:
    """New basis X'_i = sum_a matrix[a][i] X_a."""

    matrix: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        for i in range(n):
            for j in range(n):
                s = sum((self.matrix[i][k] * self.inverse[k][j] for k in range(n)), Fraction(0))
                if s != (1 if i == j else 0):
                    raise AlgebraError("matrix and inverse do not multiply to the identity")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "BasisTransform":
        m = tuple(tuple(Fraction(c) for c in r) for r in rows)
        n = len(m)
        if any(len(r) != n for r in m):
            raise AlgebraError("transform matrix must be square")
        try:
            inv = matrix_inverse(m)
        except ValueError as exc:
            raise AlgebraError(str(exc)) from exc
        return cls(m, inv)

    @classmethod
    def identity(cls, n: int) -> "BasisTransform":
        return cls.from_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def inverted(self) -> "BasisTransform":
        return BasisTransform(self.inverse, self.matrix)


def transform(C: StructureConstants, O: BasisTransform) -> StructureConstants:
    """C'^s_{ij} = O^a_i O^b_j C^g_{ab} (O^-1)^s_g."""
    n = C.dim
    if O.dim != n:
        raise AlgebraError(f"transform of dimension {O.dim} applied to algebra of dimension {n}")
    M, Minv, t = O.matrix, O.inverse, C.table
    # bracket of new basis vectors expressed in the old basis: [X'_i, X'_j] = w[i][j][g] X_g
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = [Fraction(0)] * n
            for a in range(n):
                if not M[a][i]:
                    continue
                for b in range(n):
                    if not M[b][j]:
                        continue
                    f = M[a][i] * M[b][j]
                    row = t[a][b]
                    for g in range(n):
                        if row[g]:
                            w[g] += f * row[g]
            for s in range(n):
                v = sum((Minv[s][g] * w[g] for g in range(n) if w[g]), Fraction(0))
                out[i][j][s] = v
                out[j][i][s] = -v
    return StructureConstants.from_dense(out, C.name)


def random_transform(n: int, rng: random.Random, bound: int = 3) -> BasisTransform:
    """Random invertible rational matrix with small entries."""
    while True:
        rows = [
            [Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n)]
            for _ in range(n)
        ]
        try:
            return BasisTransform.from_matrix(rows)
        except AlgebraError:
            continue


def serialize_algebra(C: StructureConstants) -> str:
    doc: dict = {"dim": C.dim}
    if C.name is not None:
        doc["name"] = C.name
    doc["brackets"] = [[i, j, k, format_rational(v)] for (i, j, k), v in sorted(C.entries.items())]
    return json.dumps(doc, separators=(", ", ": "))


def parse_algebra(document: str | Mapping) -> StructureConstants:
    """Parse the algebra JSON schema; raises AlgebraError on any defect."""
    if isinstance(document, Mapping):
        doc = document
    else:
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise AlgebraError("algebra document must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise AlgebraError("'dim' must be a positive integer")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise AlgebraError("'name' must be a string")
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise AlgebraError("'brackets' must be a list")
    entries = []
    for e in brackets:
        if not isinstance(e, list) or len(e) != 4:
            raise AlgebraError(f"bracket entry must be [i, j, k, \"p/q\"]: {e!r}")
        i, j, k, v = e
        # i > j is tolerated and folded by antisymmetry; contradictions are caught there
        try:
            entries.append((i, j, k, parse_rational(v)))
        except ValueError as exc:
            raise AlgebraError(str(exc)) from exc
    C = StructureConstants.from_brackets(dim, entries, name)
    rep = validate(C)
    if not rep.jacobi:
        raise AlgebraError("Jacobi identity fails", rep.witnesses.get("jacobi"))
    return C


def load_algebra(source: str) -> StructureConstants:
    """Catalog name or path to an algebra JSON file."""
    try:
        return catalog(source)
    except AlgebraError:
        pass
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise AlgebraError(f"unknown algebra {source!r} (not a catalog name or readable file)") from exc
    C = parse_algebra(text)
    if C.name is None:
        C = replace(C, name=Path(source).stem)
    return C
