"""Parameter context, dense polynomials, and classical Laguerre polynomials.

The :class:`ParameterContext` is the single source of truth for every
alpha-derived constant: beta = sqrt(alpha+1) and the two negative roots

    r = -(alpha+1) - beta,      s = -(alpha+1) + beta

of L_2^(alpha-1)(-x), which generate the shifted basis and the adjusted
moments.  :class:`MonomialPoly` is the dense monomial-coefficient
polynomial used as the canonical representation everywhere; classical
Laguerre polynomials are built coefficient-wise by the three-term
recurrence to avoid the cancellation of explicit binomial sums.
"""

from dataclasses import dataclass

from . import _backend as mp
from .errors import DomainError
from .numerics import DEFAULT_PRECISION, check_precision


@dataclass(frozen=True)
class ParameterContext:
    """alpha > 0 plus derived constants, pinned to a working precision."""

    alpha: object
    beta: object
    r: object
    s: object
    precision: int

    @classmethod
    def create(cls, alpha, precision=DEFAULT_PRECISION):
        precision = check_precision(precision)
        with mp.workprec(precision):
            a = mp.mpf(alpha)
            if not (mp.isfinite(a) and a > 0):
                raise DomainError(f"alpha must be a finite real > 0, got {alpha!r}")
            beta = mp.sqrt(a + 1)
            r = -(a + 1) - beta
            s = -(a + 1) + beta
        return cls(alpha=a, beta=beta, r=r, s=s, precision=precision)


class MonomialPoly:
    """Immutable dense polynomial; ``coeffs[k]`` multiplies x^k.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Arithmetic runs at the larger operand precision.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.prec = int(prec)

    @classmethod
    def constant(cls, value, prec):
        with mp.workprec(prec):
            return cls([mp.mpf(value)], prec)

    @classmethod
    def zero(cls, prec):
        return cls([], prec)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading_coefficient(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        with mp.workprec(self.prec):
            return mp.mpf(0)

    def max_abs_coefficient(self):
        with mp.workprec(self.prec):
            if not self.coeffs:
                return mp.mpf(0)
            return max(abs(c) for c in self.coeffs)

    def __add__(self, other):
        prec = max(self.prec, other.prec)
        with mp.workprec(prec):
            n = max(len(self.coeffs), len(other.coeffs))
            out = [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        return MonomialPoly(out, prec)

    def __sub__(self, other):
        prec = max(self.prec, other.prec)
        with mp.workprec(prec):
            n = max(len(self.coeffs), len(other.coeffs))
            out = [self.coefficient(k) - other.coefficient(k) for k in range(n)]
        return MonomialPoly(out, prec)

    def __neg__(self):
        with mp.workprec(self.prec):
            return MonomialPoly([-c for c in self.coeffs], self.prec)

    def __mul__(self, other):
        if isinstance(other, MonomialPoly):
            prec = max(self.prec, other.prec)
            with mp.workprec(prec):
                if self.is_zero() or other.is_zero():
                    return MonomialPoly.zero(prec)
                out = [mp.mpf(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
                for i, a in enumerate(self.coeffs):
                    for j, b in enumerate(other.coeffs):
                        out[i + j] = out[i + j] + a * b
            return MonomialPoly(out, prec)
        with mp.workprec(self.prec):
            c = mp.mpf(other)
            return MonomialPoly([a * c for a in self.coeffs], self.prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def derivative(self):
        with mp.workprec(self.prec):
            out = [k * c for k, c in enumerate(self.coeffs)][1:]
        return MonomialPoly(out, self.prec)

    def __call__(self, x):
        with mp.workprec(self.prec):
            acc = mp.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc

    def shift_up(self, k=1):
        """Multiply by x^k."""
        if self.is_zero():
            return self
        with mp.workprec(self.prec):
            zeros = [mp.mpf(0)] * k
        return MonomialPoly(zeros + list(self.coeffs), self.prec)

    def truncated(self, degree):
        """Drop all coefficients above ``degree`` (exact, no rounding)."""
        return MonomialPoly(self.coeffs[: degree + 1], self.prec)

    def __repr__(self):
        cs = ", ".join(mp.sci_str(c, 8) for c in self.coeffs)
        return f"MonomialPoly([{cs}], prec={self.prec})"


def linear(constant, prec):
    """The polynomial x + constant."""
    with mp.workprec(prec):
        return MonomialPoly([mp.mpf(constant), mp.mpf(1)], prec)


def laguerre(n, alpha_param, ctx):
    """Classical generalized Laguerre polynomial L_n^(alpha_param).

    n = -1 is allowed and yields the zero polynomial, which makes the
    exceptional closed form below well-defined at its lowest degree.
    """
    if n < -1:
        raise DomainError(f"laguerre degree must be >= -1, got {n}")
    prec = ctx.precision
    if n == -1:
        return MonomialPoly.zero(prec)
    with mp.workprec(prec):
        a = mp.mpf(alpha_param)
        prev = MonomialPoly.constant(1, prec)
        if n == 0:
            return prev
        cur = MonomialPoly([1 + a, mp.mpf(-1)], prec)
        for k in range(1, n):
            nxt = (
                (cur * (2 * k + 1 + a)) - cur.shift_up() - (prev * (k + a))
            ) * (mp.mpf(1) / (k + 1))
            prev, cur = cur, nxt
        return cur


def negate_argument(p):
    """p(x) -> p(-x): flip the sign of every odd coefficient."""
    with mp.workprec(p.prec):
        out = [(-c if k % 2 else c) for k, c in enumerate(p.coeffs)]
    return MonomialPoly(out, p.prec)


def closed_form_xop(n, ctx):
    """Exceptional co-dimension-2 Laguerre polynomial of degree n >= 2.

    Classical closed form:

        L2^alpha(-x) * L_{n-2}^(alpha-1)(x) + L2^(alpha-1)(-x) * L_{n-3}^alpha(x)

    with the L_{-1} = 0 convention; the n = 2 case therefore reduces to
    L2^alpha(-x).  This is the reference normalization for every other
    construction method in the package.
    """
    if n < 2:
        raise DomainError(f"exceptional degree must be >= 2, got {n}")
    with mp.workprec(ctx.precision):
        a = ctx.alpha
        first = negate_argument(laguerre(2, a, ctx)) * laguerre(n - 2, a - 1, ctx)
        second = negate_argument(laguerre(2, a - 1, ctx)) * laguerre(n - 3, a, ctx)
        return first + second
