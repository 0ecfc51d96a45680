from fractions import Fraction

import pytest

from lie2weyl.chains import alpha_closed_form
from lie2weyl.exact import Polynomial
from lie2weyl.hyperbolic import (
    alpha_from_series,
    coth_identity,
    coth_identity_check,
    functional_equation_check,
    functional_equation_series,
    g_derivative,
)

g = Polynomial([0, 1])
HALF = Fraction(1, 2)


def test_g_derivative_first():
    assert g_derivative(0) == g
    assert g_derivative(1) == Polynomial([HALF, 0, -HALF])
    assert g_derivative(2) == Polynomial([0, -HALF, 0, HALF])
    assert g_derivative(2) == -(g * g_derivative(1))


def test_g_derivative_rejects_negative():
    with pytest.raises(ValueError):
        g_derivative(-1)


@pytest.mark.parametrize("j", range(31))
def test_g_derivative_parity(j):
    p = g_derivative(j)
    vanishing = j % 2  # even j -> odd polynomial, so even powers vanish
    assert all(c == 0 for k, c in enumerate(p.coefficients) if k % 2 == vanishing)


def test_coth_identity_i2_is_second_order_ode():
    assert coth_identity(2) == g_derivative(2) + g * g_derivative(1)


@pytest.mark.parametrize("i", range(2, 31))
def test_coth_identity(i):
    assert coth_identity_check(i)


def test_coth_identity_rejects_small_i():
    with pytest.raises(ValueError):
        coth_identity_check(1)


def test_coth_identity_detects_wrong_sign():
    bad = coth_identity(4) + g * g_derivative(3)
    assert not bad.is_zero()


def test_functional_equation_examples():
    s0 = functional_equation_series(0, 4)
    # outside the N >= 4 window the x^2 coefficient is 1/4, from xf' = f - f^2 + (x/2)^2
    assert s0[2] == Fraction(1, 4)
    assert s0[4] == 0
    assert functional_equation_series(1, 5)[5] == 0
    assert functional_equation_series(5, 7)[7] == 0


@pytest.mark.parametrize("i", range(11))
def test_functional_equation(i):
    assert functional_equation_check(i, 40)


def test_functional_equation_rejects_odd_bound():
    with pytest.raises(ValueError):
        functional_equation_check(1, 9)


@pytest.mark.parametrize("N", range(4, 21, 2))
def test_series_and_chain_coefficients_agree(N):
    for i in range(N // 2):
        assert alpha_from_series(i, N) == alpha_closed_form(N, i) == 0
