from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lie2weyl import pbw, realization
from lie2weyl.lie import CATALOG_SUITE, catalog
from lie2weyl.pbw import (
    PBWAlgebra,
    PBWElement,
    coderivation_apply,
    coderivation_sharp,
    coexp,
    coexp_inverse,
    dhxn_check,
    exp_tangent_check,
    monomials_up_to,
    phi_from_oracle,
    polarized_sharp_check,
    teq_check,
)
from lie2weyl.realization import c_matrix
from lie2weyl.suites import cross_oracle_check
from lie2weyl.weyl import WeylElement, swap_automorphism

from .conftest import small_fraction

H = catalog("heisenberg3")
SO3 = catalog("so3")
HALF = Fraction(1, 2)


def elem(C, terms, order=None):
    return PBWElement(PBWAlgebra.of(C), terms, order)


def test_straightening_step():
    A = PBWAlgebra.of(H)
    assert A.gen(2) * A.gen(1) == elem(H, {((1, 1, 0), 0): 1, ((0, 0, 1), 1): -1})


def test_so3_associativity_spot():
    A = PBWAlgebra.of(SO3)
    z1, z2, z3 = (A.gen(i) for i in (1, 2, 3))
    assert (z3 * z2) * z1 == z3 * (z2 * z1)


def test_coexp_examples():
    assert coexp(H, (1, 1, 0)) == elem(H, {((1, 1, 0), 0): 1, ((0, 0, 1), 1): -HALF})
    A = PBWAlgebra.of(H)
    assert coexp_inverse(A.gen(1) * A.gen(2), 2) == {((1, 1, 0), 0): 1, ((0, 0, 1), 1): HALF}


def test_coexp_is_symmetrization():
    A = PBWAlgebra.of(SO3)
    z = [A.gen(i) for i in (1, 2, 3)]
    sym = (z[0] * z[1] * z[2] + z[0] * z[2] * z[1] + z[1] * z[0] * z[2]
           + z[1] * z[2] * z[0] + z[2] * z[0] * z[1] + z[2] * z[1] * z[0]).scale(Fraction(1, 6))
    assert coexp(SO3, (1, 1, 1)) == sym


def test_coexp_inverse_degree_bound():
    with pytest.raises(ValueError):
        coexp_inverse(coexp(SO3, (2, 1, 0)), 2)


def test_sharp_example():
    # h = e1 at x2: B_1 (ad e2)(e1) = 1/2 e3
    sharp = coderivation_sharp(H, 1, 2)
    assert sharp[(0, 1, 0)] == (0, 0, HALF)
    assert sharp[(1, 0, 0)] == (0, 0, 0)
    assert sharp[(0, 0, 0)] == (1, 0, 0)


def test_left_invariance_flag():
    with pytest.raises(ValueError):
        coderivation_apply(H, 1, PBWAlgebra.of(H).one(), 2, invariance="middle")
    right = coderivation_sharp(H, 1, 1)[(0, 1, 0)]
    left = coderivation_sharp(H, 1, 1, invariance="left")[(0, 1, 0)]
    assert left == tuple(-c for c in right)


@pytest.mark.parametrize("name", CATALOG_SUITE)
def test_dhxn(name):
    assert dhxn_check(catalog(name), 4)


def test_dhxn_so3_deeper():
    assert dhxn_check(SO3, 5, points=4, seed=7)
    assert dhxn_check(SO3, 4, invariance="left")


def test_dhxn_detects_wrong_weight(monkeypatch):
    good = pbw.bernoulli
    monkeypatch.setattr(pbw, "bernoulli", lambda k: Fraction(1, 5) if k == 2 else good(k))
    assert not dhxn_check(SO3, 3)


def test_polarized():
    assert polarized_sharp_check(catalog("sl2"), 4)


@pytest.mark.parametrize("n", [0, 1, 2, 12, 25])
def test_teq(n):
    assert teq_check(n)


def test_heisenberg_oracle_is_identity_plus_half_c():
    got = phi_from_oracle(H, 4)
    cm = c_matrix(H, 4)
    for i in range(3):
        for j in range(3):
            expected = swap_automorphism(cm[i][j].scale(HALF) + WeylElement.scalar(3, int(i == j), 4))
            assert got[i][j] == expected


@pytest.mark.parametrize("name", CATALOG_SUITE)
def test_cross_oracle(name):
    assert cross_oracle_check(catalog(name), 6)


def test_cross_oracle_detects_wrong_series_weight(monkeypatch):
    good = realization.phi_coefficient
    monkeypatch.setattr(realization, "phi_coefficient", lambda N: Fraction(1, 11) if N == 2 else good(N))
    assert not cross_oracle_check(SO3, 3)


@pytest.mark.parametrize("name", CATALOG_SUITE)
def test_exp_tangent(name):
    assert exp_tangent_check(catalog(name), 5, pairs=3)


def test_exp_tangent_heisenberg_terminates():
    # Z = Y - 1/2 [X, Y] exactly for a two-step nilpotent algebra
    A = PBWAlgebra.of(H)
    X = A.gen(1, None, d=1)
    Y = A.gen(2)
    ad = X * Y - Y * X
    assert ad == elem(H, {((0, 0, 1), 2): 1})
    assert (X * ad - ad * X).is_zero()
    assert exp_tangent_check(H, 6, pairs=5, seed=3)


def test_monomials_up_to():
    ms = monomials_up_to(2, 2)
    assert ms == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


algebras = st.sampled_from(["so3", "sl2", "heisenberg3", "e2"])


@st.composite
def pbw_elements(draw, name):
    C = catalog(name)
    exp = st.tuples(*[st.integers(0, 2)] * C.dim)
    terms = draw(st.dictionaries(st.tuples(exp, st.integers(0, 1)), small_fraction, max_size=3))
    return elem(C, terms)


@given(st.data(), algebras)
def test_pbw_associativity(data, name):
    u, v, w = (data.draw(pbw_elements(name)) for _ in range(3))
    assert (u * v) * w == u * (v * w)


@given(st.data(), algebras)
def test_coexp_inverse_roundtrip(data, name):
    C = catalog(name)
    exp = st.tuples(*[st.integers(0, 2)] * C.dim)
    sym = data.draw(st.dictionaries(st.tuples(exp, st.integers(0, 1)), small_fraction, max_size=3))
    sym = {k: v for k, v in sym.items() if v}
    u = elem(C, {})
    for (a, d), c in sym.items():
        img = coexp(C, a)
        u = u + elem(C, {(b, d + e): c * c2 for (b, e), c2 in img.terms.items()})
    assert coexp_inverse(u, 2 * C.dim) == sym


@given(st.data(), algebras)
def test_coexp_then_inverse_on_pbw(data, name):
    # xi o xi^-1 = id as well, starting from an arbitrary PBW element
    C = catalog(name)
    u = data.draw(pbw_elements(name))
    sym = coexp_inverse(u, 2 * C.dim)
    back = elem(C, {})
    for (a, d), c in sym.items():
        back = back + elem(C, {(b, d + e): c * c2 for (b, e), c2 in coexp(C, a).terms.items()})
    assert back == u
