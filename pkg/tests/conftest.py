from __future__ import annotations

from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lie2weyl.lie import CATALOG_SUITE, catalog
from lie2weyl.weyl import WeylElement

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALGEBRAS = [catalog(n) for n in CATALOG_SUITE]

small_fraction = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


@st.composite
def weyl_elements(draw, dim: int = 2, max_exp: int = 2, max_terms: int = 4, max_t: int = 2):
    exp = st.tuples(*[st.integers(0, max_exp)] * dim)
    terms = draw(
        st.dictionaries(st.tuples(exp, exp, st.integers(0, max_t)), small_fraction, max_size=max_terms)
    )
    return WeylElement(dim, terms)


def act(u: WeylElement, f: sp.Expr, variables, t) -> sp.Expr:
    """Apply a normal-ordered element to f as a differential operator; t is a plain symbol."""
    out = 0
    for (a, b, d), c in u.items():
        g = f
        for v, e in zip(variables, b):
            if e:
                g = sp.diff(g, v, e)
        mono = sp.Mul(*[v**e for v, e in zip(variables, a)])
        out += sp.Rational(c.numerator, c.denominator) * t**d * mono * g
    return sp.expand(out)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
