"""Moment-matrix construction and the three polynomial constructions.

For degree n, the (n+1) x (n+1) matrix M encodes the two exceptional
conditions (rows 1-2) followed by orthogonality against the flag elements
of degrees 2..n (rows 3..n+1), all expressed in the shifted basis through
adjusted moments.  With right-hand side b = (0, ..., 0, K_n), the solution
of M a = b gives the expansion coefficients of the degree-n exceptional
polynomial.

Three independent routes produce that polynomial here:

* representation A: Cramer quotients det(M_k)/det(M), cross-checked
  against the direct linear solve;
* representation B: cofactor expansion of the bordered determinant whose
  last row holds the basis polynomials (equals A times det(M)/K_n);
* Gram-Schmidt on the flag under the moment inner product.

K_n is fixed to 1: only its nonvanishing matters, and every comparison is
scalar-normalized anyway.
"""

from dataclasses import dataclass

from . import _backend as mp
from .basis import (
    ShiftedPoly,
    flag_element_shifted,
    from_monomial,
    half_ceil,
    half_floor,
)
from .classical import closed_form_xop
from .errors import DegenerateInnerProductError, DomainError, NumericError
from .linalg import determinant, determinant_and_solve
from .moments import required_coverage

DEFAULT_KN = 1


@dataclass(frozen=True)
class MomentMatrix:
    """The linear system (M, b) for one degree, plus its ingredients."""

    n: int
    rows: tuple
    b: tuple
    k_n: object
    ctx: object
    table: object


def build_matrix(n, table, ctx, k_n=DEFAULT_KN):
    """Assemble M and b for degree n >= 2 from a filled moment table.

    Row 1:  [alpha, r, r(r-s), 0, ...]
    Row 2:  [alpha, s + alpha(s-r), s(s-r), s(s-r)^2, 0, ...]
    Row 3:  column k gets  m[kc+1, kf+1]/2 + m[kc+1, kf] - beta m[kc, kf]
    Row 4:  column k gets  m[kc+2, kf+1] + m[kc+2, kf]
    Row l+1 (4 <= l <= n): column k gets  m[kc+lc, kf+lf]

    with kc = ceil(k/2), kf = floor(k/2) and likewise for l.  A table that
    does not cover the required indices raises CoverageError naming the
    missing entry.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"exceptional degree must be >= 2, got {n}")
    imax, jmax = required_coverage(n)
    if not table.covers(imax, jmax):
        table.get(imax, jmax)  # raises CoverageError with details

    prec = ctx.precision
    with mp.workprec(prec):
        a, beta, r, s = ctx.alpha, ctx.beta, ctx.r, ctx.s
        zero = mp.mpf(0)
        half = mp.mpf(1) / 2
        width = n + 1

        row1 = [a, r, r * (r - s)] + [zero] * (width - 3)
        row2 = [a, s + a * (s - r), s * (s - r)]
        if width > 3:
            row2 += [s * (s - r) ** 2] + [zero] * (width - 4)
        rows = [row1[:width], row2[:width]]

        row3 = []
        for k in range(width):
            kc, kf = half_ceil(k), half_floor(k)
            row3.append(
                half * table.get(kc + 1, kf + 1)
                + table.get(kc + 1, kf)
                - beta * table.get(kc, kf)
            )
        rows.append(row3)

        if n >= 3:
            row4 = []
            for k in range(width):
                kc, kf = half_ceil(k), half_floor(k)
                row4.append(table.get(kc + 2, kf + 1) + table.get(kc + 2, kf))
            rows.append(row4)

        for l in range(4, n + 1):
            lc, lf = half_ceil(l), half_floor(l)
            rows.append(
                [
                    table.get(half_ceil(k) + lc, half_floor(k) + lf)
                    for k in range(width)
                ]
            )

        kn = mp.mpf(k_n)
        if kn == 0:
            raise DomainError("K_n must be nonzero")
        b = [zero] * n + [kn]

    return MomentMatrix(
        n=n,
        rows=tuple(tuple(row) for row in rows),
        b=tuple(b),
        k_n=kn,
        ctx=ctx,
        table=table,
    )


#: Extra bits carried inside the elimination kernels; the returned
#: coefficients are rounded back to the context precision, so their
#: accuracy is limited by output rounding rather than pivot growth.
ELIMINATION_GUARD_BITS = 64


def solve_representation_a(mm):
    """Coefficients a_k = det(M_k)/det(M), with M_k the k-th Cramer matrix.

    Computed twice -- by Cramer quotients and by direct elimination -- and
    cross-asserted; disagreement beyond the precision budget means the
    system is too ill-conditioned for the working precision.
    """
    ctx = mm.ctx
    with mp.workprec(ctx.precision + ELIMINATION_GUARD_BITS):
        det_m, solved = determinant_and_solve(
            [list(r) for r in mm.rows], list(mm.b)
        )
        if det_m == 0:
            raise NumericError("moment matrix is singular at working precision")
        cramer = []
        for k in range(mm.n + 1):
            mk = [list(row) for row in mm.rows]
            for i in range(mm.n + 1):
                mk[i][k] = mm.b[i]
            cramer.append(determinant(mk) / det_m)
        scale = max(max(abs(c) for c in solved), mp.mpf(1))
        tol = scale * mp.mpf(2) ** (48 - ctx.precision)
        for cs, el in zip(cramer, solved):
            if abs(cs - el) > tol:
                raise NumericError(
                    "Cramer and elimination solutions disagree beyond the "
                    "precision budget; increase the working precision"
                )
    with mp.workprec(ctx.precision):
        return ShiftedPoly(tuple(mp.mpf(c) for c in solved), ctx)


def solve_representation_b(mm):
    """Bordered-determinant route: cofactors along the basis row.

    Coefficient k is (-1)^(n+k) times the minor that deletes column k from
    the first n rows of M; the result equals representation A scaled by
    det(M)/K_n.
    """
    ctx = mm.ctx
    n = mm.n
    with mp.workprec(ctx.precision + ELIMINATION_GUARD_BITS):
        top = [list(row) for row in mm.rows[:n]]
        coeffs = []
        for k in range(n + 1):
            minor = [row[:k] + row[k + 1 :] for row in top]
            det_k = determinant(minor)
            coeffs.append(det_k if (n + k) % 2 == 0 else -det_k)
        if all(c == 0 for c in coeffs):
            raise NumericError("bordered determinant collapsed to zero")
    with mp.workprec(ctx.precision):
        return ShiftedPoly(tuple(mp.mpf(c) for c in coeffs), ctx)


def gram_schmidt_flag(n, table, ctx):
    """Orthogonalize the degree-2..n flag under the moment inner product.

    Classical Gram-Schmidt with one re-orthogonalization pass, entirely in
    shifted coordinates so every inner product is an exact bilinear
    combination of table entries.  The returned degree-n element is scaled
    to the leading monomial coefficient of the classical closed form.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"exceptional degree must be >= 2, got {n}")
    imax, jmax = required_coverage(n)
    if not table.covers(imax, jmax):
        table.get(imax, jmax)

    prec = ctx.precision
    with mp.workprec(prec):
        basis_out = []
        norms = []
        for l in range(2, n + 1):
            vec = list(flag_element_shifted(l, ctx).coeffs)
            vec += [mp.mpf(0)] * (n + 1 - len(vec))
            cur = ShiftedPoly(tuple(vec), ctx)
            for _ in range(2):  # second pass re-orthogonalizes
                for prev, prev_norm in zip(basis_out, norms):
                    proj = table.inner_product(cur, prev) / prev_norm
                    cur = ShiftedPoly(
                        tuple(c - proj * p for c, p in zip(cur.coeffs, prev.coeffs)),
                        ctx,
                    )
            norm = table.inner_product(cur, cur)
            if not norm > 0:
                raise DegenerateInnerProductError(
                    f"flag element {l} collapsed under the moment inner product"
                )
            basis_out.append(cur)
            norms.append(norm)

        result = basis_out[-1]
        target = closed_form_xop(n, ctx).leading_coefficient()
        lead = result.coeffs[-1]  # basis is monic: a_n is the monomial lead
        if lead == 0:
            raise DegenerateInnerProductError(
                "orthogonalized element lost its leading coefficient"
            )
        return result.scaled(target / lead)


def normalize_leading(p, ctx, target=1):
    """Scale a ShiftedPoly so its monomial leading coefficient is ``target``."""
    with mp.workprec(ctx.precision):
        lead = p.coeffs[-1]
        if lead == 0:
            raise DomainError("cannot normalize: leading coefficient is zero")
        return p.scaled(mp.mpf(target) / lead)


def construct(n, table, ctx, method):
    """One entry point for all four construction methods.

    Returns a ShiftedPoly; ``method`` is one of ``det-a``, ``det-b``,
    ``gram-schmidt``, ``closed-form``.
    """
    if method == "det-a":
        return solve_representation_a(build_matrix(n, table, ctx))
    if method == "det-b":
        return solve_representation_b(build_matrix(n, table, ctx))
    if method == "gram-schmidt":
        return gram_schmidt_flag(n, table, ctx)
    if method == "closed-form":
        return from_monomial(closed_form_xop(n, ctx), ctx)
    raise DomainError(f"unknown construction method {method!r}")
