"""Shifted polynomial basis built from the exceptional roots.

The degree-k basis element is the monic product

    B_k(x) = (x - r)^ceil(k/2) * (x - s)^floor(k/2),

so expansion coefficients against {B_k} convert triangularly to and from
monomial coefficients.  The flag elements used by the orthogonalization
and the moment matrix are expressed here as well: the degree-2 element is
the classical L_2^alpha(-x), the degree-3 element is (x-r)^2 (x-s+1), and
from degree 4 on the flag coincides with the basis itself.
"""

from dataclasses import dataclass

from . import _backend as mp
from .classical import MonomialPoly, linear
from .errors import DomainError


def half_ceil(k):
    return (k + 1) // 2


def half_floor(k):
    return k // 2


@dataclass(frozen=True)
class ShiftedPoly:
    """Coefficients against B_0..B_n for a fixed parameter context."""

    coeffs: tuple
    ctx: object

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def max_abs_coefficient(self):
        with mp.workprec(self.ctx.precision):
            if not self.coeffs:
                return mp.mpf(0)
            return max(abs(c) for c in self.coeffs)

    def scaled(self, factor):
        with mp.workprec(self.ctx.precision):
            f = mp.mpf(factor)
            return ShiftedPoly(tuple(c * f for c in self.coeffs), self.ctx)


def basis_element(k, ctx):
    """B_k expanded to monomial form."""
    if k < 0:
        raise DomainError(f"basis index must be >= 0, got {k}")
    prec = ctx.precision
    with mp.workprec(prec):
        out = MonomialPoly.constant(1, prec)
        for m in range(k):
            root = ctx.r if m % 2 == 0 else ctx.s
            out = out * linear(-root, prec)
        return out


def _basis_ladder(n, ctx):
    """B_0..B_n as monomial polynomials (one incremental sweep)."""
    prec = ctx.precision
    with mp.workprec(prec):
        ladder = [MonomialPoly.constant(1, prec)]
        for m in range(n):
            root = ctx.r if m % 2 == 0 else ctx.s
            ladder.append(ladder[-1] * linear(-root, prec))
    return ladder


def to_monomial(p):
    """Expand a ShiftedPoly to monomial coefficients."""
    ctx = p.ctx
    if not p.coeffs:
        return MonomialPoly.zero(ctx.precision)
    ladder = _basis_ladder(p.degree, ctx)
    with mp.workprec(ctx.precision):
        out = MonomialPoly.zero(ctx.precision)
        for a, bk in zip(p.coeffs, ladder):
            out = out + bk * a
        return out


def from_monomial(p, ctx):
    """Inverse of :func:`to_monomial`.

    Solved from the top degree down: B_k is monic of degree k, so the
    degree-d coefficient of the remainder fixes a_d exactly; subtracting
    a_d B_d and truncating removes that degree without rounding feedback.
    """
    if p.is_zero():
        return ShiftedPoly((), ctx)
    ladder = _basis_ladder(p.degree, ctx)
    with mp.workprec(ctx.precision):
        coeffs = [mp.mpf(0)] * (p.degree + 1)
        rem = p
        for d in range(p.degree, -1, -1):
            if rem.degree == d:
                a = rem.coefficient(d)
                coeffs[d] = a
                rem = (rem - ladder[d] * a).truncated(d - 1)
        return ShiftedPoly(tuple(coeffs), ctx)


def flag_element(l, ctx):
    """Degree-l flag polynomial, monomial form (l >= 2)."""
    if l < 2:
        raise DomainError(f"flag index must be >= 2, got {l}")
    prec = ctx.precision
    with mp.workprec(prec):
        if l == 2:
            half = mp.mpf(1) / 2
            v = basis_element(2, ctx) * half + basis_element(1, ctx)
            return v - MonomialPoly.constant(ctx.beta, prec)
        if l == 3:
            xr = linear(-ctx.r, prec)
            return xr * xr * linear(1 - ctx.s, prec)
        return basis_element(l, ctx)


def flag_element_shifted(l, ctx):
    """Flag polynomial as ShiftedPoly coefficients (exact, no conversion).

    The degree-2 element is -beta B_0 + B_1 + B_2/2 and the degree-3 one
    is 2 beta B_1 + B_2 + B_3, both via (x-r) = (x-s) + 2 beta; higher
    flags are basis elements themselves.
    """
    if l < 2:
        raise DomainError(f"flag index must be >= 2, got {l}")
    prec = ctx.precision
    with mp.workprec(prec):
        zero, one = mp.mpf(0), mp.mpf(1)
        if l == 2:
            return ShiftedPoly((-ctx.beta, one, one / 2), ctx)
        if l == 3:
            return ShiftedPoly((zero, 2 * ctx.beta, one, one), ctx)
        return ShiftedPoly((zero,) * l + (one,), ctx)
