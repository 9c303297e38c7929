"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own evaluation paths:
reference integrals come from mpmath's adaptive quadrature (tanh-sinh /
Gauss-Legendre panels), which converges geometrically even with the
integrand's poles sitting just left of the axis, and reference special
function values come from mpmath's hypergeometric-series implementations.
"""

import mpmath
import pytest

from xlaguerre import _backend as mp
from xlaguerre.classical import ParameterContext
from xlaguerre.moments import fill_table
from xlaguerre.numerics import gauss_laguerre_rule

ALPHAS = ("0.5", "1", "3")
ALPHAS_WIDE = ("0.5", "1", "3", "3.7")
PREC = 256


def to_mpmath(x, dps=60):
    return mpmath.mpf(mp.sci_str(x, dps))


def from_mpmath(v, dps=60):
    with mp.workprec(PREC):
        return mp.mpf(mpmath.nstr(v, dps, strip_zeros=False))


def rel_err(got, want):
    """Relative deviation as a plain float (both args backend values)."""
    with mp.workprec(PREC):
        scale = abs(want)
        if scale == 0:
            return float(abs(got))
        return float(abs(got - want) / scale)


def adaptive_adjusted_moment(alpha_str, i, j, dps=45, maxdegree=6, points=None):
    """Adjusted moment by adaptive quadrature, independent of the package.

    The defaults resolve ~40 digits for small indices; deep entries (large
    i + j push the integrand's mass far to the right) need more digits, a
    higher panel degree, and finer splitting.
    """
    if points is None:
        points = [0, 1, 5, 20, 80, mpmath.inf]
    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha_str)
        b = mpmath.sqrt(a + 1)
        r = -(a + 1) - b
        s = -(a + 1) + b

        def f(x):
            return (
                x ** a
                * mpmath.e ** (-x)
                * 4
                * (x - r) ** (i - 2)
                * (x - s) ** (j - 2)
            )

        val = mpmath.quad(f, points, maxdegree=maxdegree)
        return from_mpmath(val, dps)


def adaptive_integral(f, points, dps=45):
    """Generic adaptive quadrature oracle returning a backend float."""
    with mpmath.workdps(dps):
        return from_mpmath(mpmath.quad(f, points), dps)


@pytest.fixture(scope="session")
def contexts():
    return {a: ParameterContext.create(a, PREC) for a in ALPHAS_WIDE}


@pytest.fixture(scope="session")
def tables9(contexts):
    """9 x 9 recursion-filled tables per alpha."""
    return {a: fill_table(contexts[a], 8, 8) for a in ALPHAS}


@pytest.fixture(scope="session")
def tables11(contexts):
    """Tables covering degree-10 constructions per alpha."""
    return {a: fill_table(contexts[a], 10, 10) for a in ALPHAS_WIDE}


@pytest.fixture(scope="session")
def rules200(contexts):
    return {
        a: gauss_laguerre_rule(contexts[a].alpha, 200, PREC) for a in ALPHAS
    }
