import json
import random
from fractions import Fraction

import pytest

from lie2weyl import realization, verifier
from lie2weyl.lie import CATALOG_SUITE, BasisTransform, catalog, random_transform
from lie2weyl.verifier import (
    check_commutators,
    check_covariance,
    check_lambda_reflection,
    check_order_condition,
    check_pde,
)
from lie2weyl.weyl import WeylElement, commutator

from .conftest import ALGEBRAS


@pytest.mark.parametrize("C", ALGEBRAS, ids=CATALOG_SUITE)
def test_commutators_lambda_one(C):
    rep = check_commutators(C, 1, 6)
    assert rep.passed and rep.gated
    assert rep.first_failure() is None


def test_heisenberg_bracket_is_t_x3():
    C = catalog("heisenberg3")
    imgs = realization.realize(C, 1, 6)
    assert commutator(imgs[0], imgs[1]) == WeylElement.x(3, 3, 6).shift_t()


@pytest.mark.parametrize("lam", [Fraction(0), Fraction(1, 2), Fraction(2)])
def test_lambda_family_so3(lam):
    rep = check_commutators(catalog("so3"), lam, 5)
    assert rep.passed and rep.gated


def test_lambda_report_not_gated_when_not_totally_antisymmetric():
    rep = check_commutators(catalog("heisenberg3"), Fraction(1, 2), 4)
    assert not rep.gated
    assert rep.passed


@pytest.mark.parametrize("C", ALGEBRAS, ids=CATALOG_SUITE)
def test_lambda_reflection(C):
    assert check_lambda_reflection(C, 5)


@pytest.mark.parametrize("name,T", [("heisenberg3", 4), ("so3", 6), ("sl2", 5)])
def test_pde(name, T):
    assert check_pde(catalog(name), T)


@pytest.mark.parametrize("N", range(1, 8))
def test_order_condition_so3(N):
    assert check_order_condition(catalog("so3"), N)


@pytest.mark.parametrize("name", ["sl2", "e2", "ut3", "sl2_plus_abelian:1"])
def test_order_condition_others(name):
    assert all(check_order_condition(catalog(name), N) for N in range(1, 6))


def test_order_condition_rejects_zero():
    with pytest.raises(ValueError):
        check_order_condition(catalog("so3"), 0)


def test_corrupted_coefficient_fails(monkeypatch):
    good = realization.phi_coefficient

    def bad(N):
        return Fraction(1, 10) if N == 2 else good(N)

    monkeypatch.setattr(realization, "phi_coefficient", bad)
    rep = check_commutators(catalog("so3"), 1, 4)
    assert not rep.passed
    assert rep.first_failure() is not None
    assert rep.to_dict()["pass"] is False


def test_corrupted_order_condition_fails(monkeypatch):
    good = verifier.phi_coefficient
    monkeypatch.setattr(verifier, "phi_coefficient", lambda N: Fraction(1, 10) if N == 2 else good(N))
    assert not check_order_condition(catalog("so3"), 2)


def test_report_json_deterministic_across_threads():
    C = catalog("sl2")
    a = check_commutators(C, 1, 5, threads=1).to_json()
    b = check_commutators(C, 1, 5, threads=4).to_json()
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"algebra", "lambda", "order", "pass", "pairs"}
    assert [(p["mu"], p["nu"]) for p in doc["pairs"]] == [(1, 2), (1, 3), (2, 3)]


def test_covariance_examples():
    O = BasisTransform.from_matrix([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    assert check_covariance(catalog("so3"), O, 4)
    U = BasisTransform.from_matrix([[1, 2, 0], [0, 1, 0], [3, 1, 1]])
    assert check_covariance(catalog("heisenberg3"), U, 4)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("name", ["so3", "heisenberg3"])
def test_covariance_random(name, seed):
    C = catalog(name)
    assert check_covariance(C, random_transform(C.dim, random.Random(seed)), 4)


def test_covariance_detects_wrong_substitution(monkeypatch):
    # leaving d untouched must break the identity
    O = BasisTransform.from_matrix([[1, 1, 0], [0, 2, 0], [0, 0, 1]])
    monkeypatch.setattr(verifier, "substitute_d", lambda u, m: u)
    assert not check_covariance(catalog("so3"), O, 3)


def test_covariance_dimension_mismatch():
    with pytest.raises(ValueError):
        check_covariance(catalog("so3"), BasisTransform.identity(2), 2)
