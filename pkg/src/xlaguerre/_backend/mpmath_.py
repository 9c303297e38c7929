"""mpmath backend: the pure-Python fallback."""

from contextlib import contextmanager

import mpmath
from mpmath import mp

NAME = "mpmath"
IS_COMPILED = False


@contextmanager
def workprec(bits):
    with mp.workprec(int(bits)):
        yield


def current_prec():
    return mp.prec


def mpf(x):
    if isinstance(x, float):
        # exact binary value, same as gmpy2.mpfr(float)
        return mpmath.mpf(x)
    if isinstance(x, str):
        x = x.strip()
    return mpmath.mpf(x)


exp = mpmath.exp
log = mpmath.log
sqrt = mpmath.sqrt
gamma = mpmath.gamma
isfinite = mpmath.isfinite
isnan = mpmath.isnan


def const_euler():
    return +mpmath.euler


def sci_str(x, digits):
    """Canonical scientific notation matching the gmpy2 backend's output."""
    digits = max(int(digits), 2)
    if x == 0:
        return "0." + "0" * (digits - 1) + "e+0"
    s = mpmath.libmp.to_str(
        x._mpf_, digits, strip_zeros=False, min_fixed=1, max_fixed=0
    )
    # to_str yields '-2.400000e+1', or fixed forms like '6.000000' when the
    # decimal exponent is 0; normalize either shape.
    mant, _, etxt = s.partition("e")
    neg = mant.startswith("-")
    if neg:
        mant = mant[1:]
    head, _, tail = mant.partition(".")
    alldigs = head + tail
    first = next(i for i, ch in enumerate(alldigs) if ch != "0")
    e = (len(head) - 1 - first) + (int(etxt) if etxt else 0)
    digs = alldigs[first:].ljust(digits, "0")[:digits]
    sign = "-" if neg else ""
    esign = "+" if e >= 0 else "-"
    return f"{sign}{digs[0]}.{digs[1:]}e{esign}{abs(e)}"
