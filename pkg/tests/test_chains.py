from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lie2weyl.chains import (
    ChainExpr,
    alpha_closed_form,
    chain_labels,
    chain_reduce,
    concrete_tensor_check,
    even_order_check,
    even_order_vector,
    jsi_check,
    jsi_sides,
    k_sum,
    k_sum_from_chains,
    k_sum_unfolded,
    m_to_b,
    special_symmetries_rank,
    special_symmetry,
    symmetry_difference,
    symmetry_expansion_check,
    z_dimension,
    z_dimension_presented,
)
from lie2weyl.lie import CATALOG_SUITE, catalog

from .conftest import ALGEBRAS


def coeffs(expr: ChainExpr) -> list:
    return list(expr.coefficients)


def test_z_central_chain():
    assert chain_reduce(0, 0, 3, "M").terms() == {0: 1}
    # b-kind: sum_j C(N-1, j) b_j
    assert coeffs(chain_reduce(0, 0, 3, "b")) == [1, 3, 3, 1]


def test_z_121_order5():
    assert chain_reduce(1, 2, 1, "M").terms() == {1: 1, 2: -2, 3: 1}


def test_chain_reduce_rejects_bad_labels():
    with pytest.raises(ValueError):
        chain_reduce(1, 1, 1, "Q")


@pytest.mark.parametrize("N", range(1, 17))
def test_m_and_b_reductions_agree(N):
    for l, m, k in chain_labels(N):
        assert m_to_b(chain_reduce(l, m, k, "M")).reduced() == chain_reduce(l, m, k, "b").reduced()


def test_k_sum_examples():
    assert coeffs(k_sum(2, 6))[:2] == [1, 2] and k_sum(2, 6).terms() == {0: 1, 1: 2}
    assert k_sum(0, 4).terms() == {0: 5, 1: 10}


@pytest.mark.parametrize("N", range(2, 13))
def test_k_sum_matches_chain_sum(N):
    for I in range(N // 2 + 1):
        assert k_sum(I, N) == k_sum_from_chains(I, N)


def test_k_not_symmetric_in_b_basis():
    # K_{I,N-I} and K_{N-I,I} differ as reduced b-vectors
    assert k_sum_unfolded(1, 4).reduced() != k_sum_unfolded(3, 4).reduced()


def test_special_symmetries_displayed():
    assert special_symmetry(0, 8).terms() == {0: 1, 1: -2}
    assert special_symmetry(1, 8).terms() == {1: 1, 2: -3, 3: 2}
    assert special_symmetry(2, 8).terms() == {2: 1, 3: -4, 4: 5, 5: -2}
    assert special_symmetry(3, 8).terms() == {3: 1, 4: -5, 5: 9, 6: -7, 7: 2}


def test_x5_expansion():
    lhs = symmetry_difference(0, 5, 8)
    rhs = special_symmetry(0, 8) - special_symmetry(1, 8).scale(3) + special_symmetry(2, 8)
    assert lhs == rhs


@pytest.mark.parametrize("s", range(1, 16))
def test_symmetry_expansion(s):
    for N in range(s + 1, s + 8):
        for j in range((N - s - 1) // 2 + 1):
            assert symmetry_expansion_check(j, s, N)


@pytest.mark.parametrize("N", range(2, 17))
def test_special_symmetries_full_rank(N):
    rank, count = special_symmetries_rank(N)
    assert rank == count


def test_jsi_spot_values():
    assert jsi_sides(4, 5, 4) == (126, 126)
    assert jsi_sides(4, 5, 6) == (88, 88)


@given(st.integers(1, 25), st.integers(1, 25), st.integers(1, 25))
def test_jsi_property(j, s, i):
    assert jsi_check(j, s, i)


@pytest.mark.parametrize("N", range(1, 17))
def test_z_dimension(N):
    assert z_dimension(N) == (N + 1) // 2
    assert z_dimension_presented(N) == (N + 1) // 2


def test_z_dimension_examples():
    assert z_dimension(2) == 1
    assert z_dimension(7) == 4


@pytest.mark.parametrize("N", range(4, 41, 2))
def test_even_order(N):
    assert even_order_check(N)
    assert even_order_vector(N).is_zero()


def test_alpha_closed_form_zero():
    assert all(alpha_closed_form(N, i) == 0 for N in range(4, 21, 2) for i in range(N // 2))


def test_chain_expr_kinds():
    with pytest.raises(ValueError):
        ChainExpr.zero(3, "M") + ChainExpr.zero(3, "b")
    with pytest.raises(ValueError):
        ChainExpr.basis(3, "M", 0).reduced()


@pytest.mark.parametrize("C", ALGEBRAS, ids=CATALOG_SUITE)
def test_concrete_shiftd_ensures_odd(C):
    assert concrete_tensor_check(C, 5, "shiftd")
    assert concrete_tensor_check(C, 5, "ensuresOdd")


@pytest.mark.parametrize("C", ALGEBRAS, ids=CATALOG_SUITE)
def test_concrete_chain_consistency(C):
    for N in range(1, 7):
        assert concrete_tensor_check(C, N, "chain-consistency")


@pytest.mark.parametrize("C", ALGEBRAS, ids=CATALOG_SUITE)
def test_concrete_k_sums(C):
    for N in range(1, 6):
        assert concrete_tensor_check(C, N, "k-sums")


def test_concrete_unknown_check():
    with pytest.raises(ValueError):
        concrete_tensor_check(catalog("so3"), 2, "nope")


# M-chain equality is recorded as data; these pin the observed pattern.

@pytest.mark.parametrize("name", ["so3", "sl2", "sl2_plus_abelian:1"])
def test_su2_equal_pattern(name):
    got = [concrete_tensor_check(catalog(name), N, "su2-equal") for N in range(1, 7)]
    assert got == [True, True, False, True, False, True]


@pytest.mark.parametrize("name", ["abelian:3", "heisenberg3", "ut3", "e2"])
def test_su2_equal_solvable(name):
    assert all(concrete_tensor_check(catalog(name), N, "su2-equal") for N in range(1, 7))
