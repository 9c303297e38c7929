"""Multiprecision arithmetic backend, selected once at import time.

Two interchangeable implementations of the same small floating-point API:

* ``gmpy2_`` -- compiled core.  Binds MPFR through the gmpy2 C extension;
  roughly an order of magnitude faster at 256-bit precision.
* ``mpmath_`` -- pure-Python fallback.  Always importable.

The compiled core is preferred when present.  Set ``XLAGUERRE_BACKEND`` to
``gmpy2`` or ``mpmath`` to force a choice (forcing ``gmpy2`` raises if the
extension is missing rather than silently falling back).

Every function that rounds does so at the precision installed by the
innermost ``workprec`` context.  Values themselves are plain backend
numbers (``gmpy2.mpfr`` or ``mpmath.mpf``); they support the usual
arithmetic operators and mix freely with Python ints.
"""

import os

_FORCED = os.environ.get("XLAGUERRE_BACKEND", "").strip().lower()

if _FORCED == "mpmath":
    from . import mpmath_ as impl
elif _FORCED == "gmpy2":
    from . import gmpy2_ as impl
elif _FORCED == "":
    try:
        from . import gmpy2_ as impl
    except ImportError:
        from . import mpmath_ as impl
else:
    raise ImportError(
        f"XLAGUERRE_BACKEND={_FORCED!r}: expected 'gmpy2', 'mpmath' or unset"
    )

BACKEND_NAME = impl.NAME
BACKEND_IS_COMPILED = impl.IS_COMPILED

workprec = impl.workprec
current_prec = impl.current_prec
mpf = impl.mpf
exp = impl.exp
log = impl.log
sqrt = impl.sqrt
gamma = impl.gamma
isfinite = impl.isfinite
isnan = impl.isnan
const_euler = impl.const_euler
sci_str = impl.sci_str

__all__ = [
    "BACKEND_NAME",
    "BACKEND_IS_COMPILED",
    "workprec",
    "current_prec",
    "mpf",
    "exp",
    "log",
    "sqrt",
    "gamma",
    "isfinite",
    "isnan",
    "const_euler",
    "sci_str",
]
