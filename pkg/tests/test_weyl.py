from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from lie2weyl.weyl import (
    TermBudgetExceeded,
    WeylElement,
    commutator,
    dagger,
    delta_derivative,
    normal_mul,
    substitute_d,
    swap_automorphism,
)

from .conftest import act, small_fraction, weyl_elements

X = [None] + [WeylElement.x(3, i) for i in (1, 2, 3)]
D = [None] + [WeylElement.d(3, i) for i in (1, 2, 3)]
ONE = WeylElement.scalar(3, 1)

xs = sp.symbols("x1 x2")
tsym = sp.symbols("t")


def mono(a, b, c=1, d=0):
    return WeylElement.monomial(a, b, d, c)


# Normal forms below come from scripts/derive_oracles.py, which reads them off
# the action of each word on monomials (no Weyl rewriting involved).

def test_defining_relation():
    assert D[1] * X[1] == X[1] * D[1] + ONE
    assert D[1] * X[2] == X[2] * D[1]
    assert commutator(D[2], X[2]) == ONE


def test_d_squared_x_squared():
    lhs = D[1] * D[1] * X[1] * X[1]
    assert lhs == mono((2, 0, 0), (2, 0, 0)) + mono((1, 0, 0), (1, 0, 0), 4) + WeylElement.scalar(3, 2)


def test_commutator_example():
    lhs = commutator(X[1] * D[2], X[2] * D[1])
    assert lhs == X[1] * D[1] - X[2] * D[2]


def test_three_generator_word():
    lhs = D[2] * D[1] * X[1] * X[2] * X[3]
    expected = (
        mono((0, 0, 1), (0, 0, 0))
        + mono((0, 1, 1), (0, 1, 0))
        + mono((1, 0, 1), (1, 0, 0))
        + mono((1, 1, 1), (1, 1, 0))
    )
    assert lhs == expected


def test_dagger_example():
    assert dagger(X[1] * D[1]) == -(X[1] * D[1]) - ONE


def test_swap_example():
    # x1 -> -d1, d1 -> x1, so x1 d1 -> -d1 x1
    assert swap_automorphism(X[1] * D[1]) == -(X[1] * D[1]) - ONE


def test_canonical_text():
    u = X[1] + (X[3] * D[2]).scale(Fraction(1, 2)).shift_t()
    assert u.canonical_text() == "1 · x1 + 1/2 · x3 d2 t"
    assert (-u).canonical_text() == "-1 · x1 - 1/2 · x3 d2 t"
    assert WeylElement.zero(3).canonical_text() == "0"


def test_truncation_and_order():
    u = WeylElement.t(2, order=2)
    assert (u * u * u).is_zero()
    assert (u * u).t_degrees() == [2]
    exact = WeylElement.t(2)
    assert (exact * exact * exact).t_degrees() == [3]
    assert normal_mul(WeylElement.t(2, order=5), WeylElement.t(2, order=1)).order == 1


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        WeylElement.x(2, 1) * WeylElement.x(3, 1)


def test_delta_derivative():
    u = mono((0, 0, 0), (2, 1, 0), 3, 1)
    assert delta_derivative(u, 1) == mono((0, 0, 0), (1, 1, 0), 6, 1)
    assert delta_derivative(u, 3).is_zero()
    with pytest.raises(ValueError):
        delta_derivative(X[1], 1)
    with pytest.raises(ValueError):
        delta_derivative(u, 4)


def test_substitute_d():
    u = D[1] * D[2]
    M = [[1, 1, 0], [0, 2, 0], [0, 0, 1]]
    # d1 -> d1 + d2, d2 -> 2 d2
    assert substitute_d(u, M) == (D[1] + D[2]) * D[2].scale(2)


def test_term_budget(monkeypatch):
    monkeypatch.setenv("LIE2WEYL_MAX_TERMS", "3")
    with pytest.raises(TermBudgetExceeded):
        (D[1] * D[1] * X[1] * X[1]) + X[2] + X[3]


@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_associativity(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(weyl_elements(), weyl_elements())
def test_product_matches_operator_action(u, v):
    f = sum(sp.Rational(k + 1, 3) * xs[0] ** (k % 4) * xs[1] ** (3 - k % 4) for k in range(5)) + xs[0] ** 4 * xs[1]
    assert sp.expand(act(u * v, f, xs, tsym) - act(u, act(v, f, xs, tsym), xs, tsym)) == 0


@given(weyl_elements(), weyl_elements())
def test_dagger_antimultiplicative(u, v):
    assert dagger(u * v) == dagger(v) * dagger(u)


@given(weyl_elements())
def test_dagger_involution(u):
    assert dagger(dagger(u)) == u


@given(weyl_elements(), weyl_elements())
def test_swap_multiplicative(u, v):
    assert swap_automorphism(u * v) == swap_automorphism(u) * swap_automorphism(v)


@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_commutator_leibniz(u, v, w):
    assert commutator(u, v * w) == commutator(u, v) * w + v * commutator(u, w)


@given(weyl_elements(), weyl_elements(), weyl_elements())
def test_jacobi(u, v, w):
    total = commutator(u, commutator(v, w)) + commutator(v, commutator(w, u)) + commutator(w, commutator(u, v))
    assert total.is_zero()


d_only = st.builds(
    lambda terms: WeylElement(2, {((0, 0), b, d): c for (b, d), c in terms.items()}),
    st.dictionaries(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(0, 2)), small_fraction, max_size=4),
)


@given(d_only, d_only, st.integers(1, 2))
def test_delta_derivative_leibniz(u, v, r):
    assert delta_derivative(u * v, r) == delta_derivative(u, r) * v + u * delta_derivative(v, r)


@given(d_only, d_only, st.lists(small_fraction, min_size=4, max_size=4))
def test_substitute_d_multiplicative(u, v, m):
    M = [m[:2], m[2:]]
    assert substitute_d(u * v, M) == substitute_d(u, M) * substitute_d(v, M)
