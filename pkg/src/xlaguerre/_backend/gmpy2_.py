"""gmpy2/MPFR backend: the compiled fast path."""

from contextlib import contextmanager

import gmpy2

NAME = "gmpy2"
IS_COMPILED = True


@contextmanager
def workprec(bits):
    """Run the enclosed block with MPFR rounding at ``bits`` precision."""
    ctx = gmpy2.context(precision=int(bits))
    with ctx:
        yield


def current_prec():
    return gmpy2.get_context().precision


def mpf(x):
    """Make an mpfr from int/float/str/mpfr, rounded at current precision."""
    return gmpy2.mpfr(x)


exp = gmpy2.exp
log = gmpy2.log
sqrt = gmpy2.sqrt
gamma = gmpy2.gamma
isfinite = gmpy2.is_finite
isnan = gmpy2.is_nan
const_euler = gmpy2.const_euler


def sci_str(x, digits):
    """Canonical scientific notation: ``-d.dddde+X`` with exactly ``digits``
    significant digits (minimum 2) and an unpadded decimal exponent."""
    digits = max(int(digits), 2)
    if gmpy2.is_zero(x):
        return "0." + "0" * (digits - 1) + "e+0"
    mant, exp10, _ = gmpy2.digits(x, 10, digits)
    neg = mant.startswith("-")
    if neg:
        mant = mant[1:]
    mant = mant.ljust(digits, "0")
    # gmpy2 convention: value = 0.mant * 10**exp10
    e = exp10 - 1
    sign = "-" if neg else ""
    esign = "+" if e >= 0 else "-"
    return f"{sign}{mant[0]}.{mant[1:]}e{esign}{abs(e)}"
