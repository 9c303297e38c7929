"""Special functions and quadrature against independent oracles.

Frozen reference values below were produced by adaptive quadrature
(mpmath.quad at 90 digits, see conftest-style calls in comments) and
corroborated against mpmath's closed-form implementations, which use
different algorithms than this package.
"""

import mpmath
import pytest

from conftest import ALPHAS, PREC, adaptive_integral, rel_err, to_mpmath
from xlaguerre import _backend as mp
from xlaguerre.errors import DomainError
from xlaguerre.numerics import (
    exp_integral_E,
    gamma,
    gauss_laguerre_rule,
    integrate_adjusted,
    predicted_truncation_error,
    suggested_node_count,
    upper_incomplete_gamma,
)

# integral_0^inf t^1.5 e^-t dt, 82 digits
GAMMA_2_5 = (
    "1.32934038817913702047362561250585888709816209209179034616035584238968346344327"
)
# integral_2^inf t^-2 e^-t dt
UIG_M1_2 = (
    "0.0187671309102452263797599122581926793893235879917648244067565626153437583365916"
)
# integral_1^inf e^-t t^-2 dt
E2_1 = (
    "0.148495506775922047918359994701339218414763837624859626929858188623892797185758"
)


def test_gamma_integers():
    with mp.workprec(PREC):
        assert rel_err(gamma(1, PREC), mp.mpf(1)) == 0
        assert rel_err(gamma(4, PREC), mp.mpf(6)) < 1e-75


def test_gamma_half_integer_against_quadrature_oracle():
    with mp.workprec(PREC):
        frozen = mp.mpf(GAMMA_2_5)
        assert rel_err(gamma("2.5", PREC), frozen) < 1e-75
    live = adaptive_integral(
        lambda t: t ** mpmath.mpf("1.5") * mpmath.e ** (-t),
        [0, 1, 10, 60, mpmath.inf],
    )
    assert rel_err(gamma("2.5", PREC), live) < 1e-40


def test_gamma_domain():
    with pytest.raises(DomainError):
        gamma(0, PREC)
    with pytest.raises(DomainError):
        gamma(-2.5, PREC)
    with pytest.raises(DomainError):
        gamma(2, 64)  # precision below the 128-bit floor


@pytest.mark.parametrize("x", ["0.5", "1", "2.5", "4"])
def test_gamma_functional_equation(x):
    with mp.workprec(PREC):
        xv = mp.mpf(x)
        lhs = gamma(xv + 1, PREC)
        rhs = xv * gamma(xv, PREC)
        assert abs(lhs - rhs) / abs(lhs) <= mp.mpf(2) ** (8 - PREC)


@pytest.mark.parametrize("a", ["0.3", "2", "7.5"])
def test_upper_incomplete_at_one_is_exponential(a):
    with mp.workprec(PREC):
        av = mp.mpf(a)
        got = upper_incomplete_gamma(1, av, PREC)
        assert rel_err(got, mp.exp(-av)) < 1e-74


def test_upper_incomplete_small_a_limits_to_gamma():
    with mp.workprec(PREC):
        got = upper_incomplete_gamma("2.5", mp.mpf(10) ** -40, PREC)
        # Gamma(x, a) = Gamma(x) - a^x/x (1 + O(a)); at a = 1e-40 the gap
        # is ~1e-100, far below the comparison tolerance
        assert rel_err(got, gamma("2.5", PREC)) < 1e-70


def test_upper_incomplete_negative_x_frozen_oracle():
    with mp.workprec(PREC):
        frozen = mp.mpf(UIG_M1_2)
        assert rel_err(upper_incomplete_gamma(-1, 2, PREC), frozen) < 1e-75
    live = adaptive_integral(
        lambda t: t ** -2 * mpmath.e ** (-t), [2, 10, 60, mpmath.inf]
    )
    assert rel_err(upper_incomplete_gamma(-1, 2, PREC), live) < 1e-40


@pytest.mark.parametrize(
    "x,a",
    [
        ("-0.5", "0.27"),   # recurrence-lift branch
        ("-0.9999", "0.0003"),
        ("0", "0.35"),      # E1 series branch
        ("0", "1.6"),
        ("3.25", "1.5"),    # lower-series branch
        ("-4.5", "0.8"),    # continued fraction, x <= -1
        ("6", "40"),        # continued fraction, large a
    ],
)
def test_upper_incomplete_branches_against_mpmath(x, a):
    got = upper_incomplete_gamma(x, a, PREC)
    with mpmath.workdps(90):
        want = mpmath.gammainc(mpmath.mpf(x), mpmath.mpf(a), mpmath.inf)
        rel = abs(to_mpmath(got, 85) - want) / abs(want)
        assert rel < mpmath.mpf(10) ** -74


def test_upper_incomplete_domain():
    for bad_a in (0, -1):
        with pytest.raises(DomainError):
            upper_incomplete_gamma(1, bad_a, PREC)


def test_exp_integral_order_zero_closed_form():
    with mp.workprec(PREC):
        for x in (mp.mpf("0.5"), mp.mpf(2)):
            got = exp_integral_E(0, x, PREC)
            assert rel_err(got, mp.exp(-x) / x) < 1e-74


def test_exp_integral_frozen_oracle():
    with mp.workprec(PREC):
        frozen = mp.mpf(E2_1)
        assert rel_err(exp_integral_E(2, 1, PREC), frozen) < 1e-75


def test_exp_integral_incomplete_gamma_identity_alpha3():
    # E_{1+alpha}(-r) against (-r)^alpha Gamma(-alpha, -r) at alpha=3, r=-6
    with mp.workprec(PREC):
        lhs = exp_integral_E(4, 6, PREC)
        rhs = mp.mpf(6) ** 3 * upper_incomplete_gamma(-3, 6, PREC)
        assert abs(lhs - rhs) / abs(rhs) <= mp.mpf(2) ** (16 - PREC)


@pytest.mark.parametrize("a,x", [("0.5", "0.7"), ("2", "1"), ("4", "6"), ("-1.5", "2")])
def test_exp_integral_identity_grid(a, x):
    with mp.workprec(PREC):
        av, xv = mp.mpf(a), mp.mpf(x)
        lhs = exp_integral_E(av, xv, PREC)
        rhs = mp.exp((av - 1) * mp.log(xv)) * upper_incomplete_gamma(
            1 - av, xv, PREC
        )
        assert abs(lhs - rhs) / abs(rhs) <= mp.mpf(2) ** (16 - PREC)


def test_exp_integral_domain():
    with pytest.raises(DomainError):
        exp_integral_E(2, 0, PREC)
    with pytest.raises(DomainError):
        exp_integral_E(2, -3, PREC)


# -- quadrature ---------------------------------------------------------------


def test_rule_single_node():
    rule = gauss_laguerre_rule(1, 1, PREC)
    with mp.workprec(PREC):
        assert rel_err(rule.nodes[0], mp.mpf(2)) < 1e-75
        assert rel_err(rule.weights[0], mp.mpf(1)) < 1e-75  # Gamma(2) = 1


def test_rule_total_mass(contexts):
    for a in ALPHAS:
        rule = gauss_laguerre_rule(contexts[a].alpha, 24, PREC)
        with mp.workprec(PREC):
            got = sum(rule.weights)
            assert rel_err(got, gamma(contexts[a].alpha + 1, PREC)) < 1e-70


def test_rule_polynomial_exactness_100_nodes():
    rule = gauss_laguerre_rule(1, 100, PREC)
    with mp.workprec(PREC):
        assert rel_err(rule.power_integral(2), mp.mpf(6)) < 1e-70  # Gamma(4)


def test_rule_exactness_sweep():
    rule = gauss_laguerre_rule("1.5", 24, PREC)
    digits = int(PREC * 0.30103)
    tol = mp.mpf(10) ** (-int(0.8 * digits))
    with mp.workprec(PREC):
        for k in range(2 * 24):
            exact = gamma(mp.mpf("1.5") + k + 1, PREC)
            assert abs(rule.power_integral(k) - exact) / exact < tol


def test_rule_structure(rules200, contexts):
    for a in ALPHAS:
        rule = rules200[a]
        with mp.workprec(PREC):
            assert all(x > 0 for x in rule.nodes)
            assert all(w > 0 for w in rule.weights)
            assert all(
                nxt > cur for cur, nxt in zip(rule.nodes, rule.nodes[1:])
            )


def test_rule_domain():
    with pytest.raises(DomainError):
        gauss_laguerre_rule(1, 0, PREC)
    with pytest.raises(DomainError):
        gauss_laguerre_rule(0, 10, PREC)
    with pytest.raises(DomainError):
        gauss_laguerre_rule(-1, 10, PREC)


def test_integrate_adjusted_cancellation(contexts, rules200):
    # complete cancellation of the shifted factors: (2,2) -> 4 Gamma(1+alpha)
    for a in ALPHAS:
        ctx = contexts[a]
        got = integrate_adjusted(rules200[a], 2, 2, ctx)
        with mp.workprec(PREC):
            want = 4 * gamma(ctx.alpha + 1, PREC)
            assert rel_err(got, want) < 1e-70


def test_integrate_adjusted_alpha3_value(contexts, rules200):
    got = integrate_adjusted(rules200["3"], 2, 2, contexts["3"])
    with mp.workprec(PREC):
        assert rel_err(got, mp.mpf(24)) < 1e-70


def test_integrate_adjusted_positive(contexts, rules200):
    got = integrate_adjusted(rules200["1"], 0, 0, contexts["1"])
    with mp.workprec(PREC):
        assert got > 0


def test_integrate_adjusted_alpha_mismatch(contexts, rules200):
    with pytest.raises(DomainError):
        integrate_adjusted(rules200["1"], 2, 2, contexts["3"])


def test_node_doubling_convergence_polynomial_region(contexts):
    """Node doubling must leave polynomial-exact entries stable."""
    ctx = contexts["1"]
    digits = int(PREC * 0.30103)
    tol = mp.mpf(10) ** (-(digits // 2))
    r1 = gauss_laguerre_rule(ctx.alpha, 100, PREC)
    r2 = gauss_laguerre_rule(ctx.alpha, 200, PREC)
    with mp.workprec(PREC):
        for i in range(2, 9):
            for j in range(2, 9):
                one = integrate_adjusted(r1, i, j, ctx)
                two = integrate_adjusted(r2, i, j, ctx)
                assert abs(one - two) / abs(two) < tol


def test_node_doubling_rational_region_follows_truncation_model(contexts):
    """Near-axis pole entries converge like the e^(-4 sqrt(nd)) model, far
    slower than the polynomial region; doubling must shrink the change."""
    ctx = contexts["1"]
    r1 = gauss_laguerre_rule(ctx.alpha, 100, PREC)
    r2 = gauss_laguerre_rule(ctx.alpha, 200, PREC)
    r4 = gauss_laguerre_rule(ctx.alpha, 400, PREC)
    with mp.workprec(PREC):
        change1 = mp.mpf(0)
        change2 = mp.mpf(0)
        for i in range(2):
            for j in range(2):
                a = integrate_adjusted(r1, i, j, ctx)
                b = integrate_adjusted(r2, i, j, ctx)
                c = integrate_adjusted(r4, i, j, ctx)
                change1 = max(change1, abs(a - b) / abs(b))
                change2 = max(change2, abs(b - c) / abs(c))
        bound1 = 4 * predicted_truncation_error(ctx, 100)
        bound2 = 4 * predicted_truncation_error(ctx, 200)
        assert change1 < bound1
        assert change2 < bound2
        assert change2 < change1 / 100


def test_suggested_node_count_model(contexts):
    for a in ALPHAS:
        ctx = contexts[a]
        n = suggested_node_count(ctx, 27)
        assert n >= 200
        assert predicted_truncation_error(ctx, n) < 1e-25
        assert predicted_truncation_error(ctx, 2 * n) < predicted_truncation_error(
            ctx, n
        )


def test_precision_doubling_stability(contexts):
    digits = int(PREC * 0.30103)
    with mp.workprec(2 * PREC):
        for fn, args in [
            (gamma, ("2.5",)),
            (upper_incomplete_gamma, ("-3", "6")),
            (exp_integral_E, ("2", "1")),
        ]:
            lo = fn(*args, PREC)
            hi = fn(*args, 2 * PREC)
            assert abs(lo - hi) / abs(hi) < mp.mpf(10) ** (-(digits - 2))
