"""Exact Weyl-algebra realizations of finite-dimensional Lie algebras, with verifiers."""

from .exact import Rational, bernoulli, format_rational, parse_rational
from .lie import (
    AlgebraError,
    BasisTransform,
    StructureConstants,
    catalog,
    load_algebra,
    parse_algebra,
    serialize_algebra,
    transform,
    validate,
)
from .realization import phi_series, realize
from .verifier import check_commutators
from .weyl import TermBudgetExceeded, WeylElement

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "BasisTransform",
    "Rational",
    "StructureConstants",
    "TermBudgetExceeded",
    "WeylElement",
    "bernoulli",
    "catalog",
    "check_commutators",
    "format_rational",
    "load_algebra",
    "parse_algebra",
    "parse_rational",
    "phi_series",
    "realize",
    "serialize_algebra",
    "transform",
    "validate",
]
