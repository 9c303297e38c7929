"""Adjusted-moment table: initial values, recursions, and the fill schedule.

The adjusted moments

    m[i, j] = integral_0^inf (x-r)^i (x-s)^j * x^alpha e^(-x) / L(x)^2 dx,

with L(x) = (x-r)(x-s)/2, satisfy one three-term and two four-term
recursion identities that, together with three Gamma-expressible seed
values m[2,2], m[1,2], m[2,1], determine every entry of the table.  The
identities (beta = sqrt(alpha+1)):

  three-term:   m[i+1,j] = m[i,j+1] + 2 beta m[i,j]

  four-term A:  m[i+1,j+1] = (i+j-1+2a+beta) m[i+1,j]
                  + ((1-i-j)(a+1) + (3-3i-j-4a) beta) m[i,j]
                  + (2i-4)(a+1)(beta+1) m[i-1,j]              (i >= 1)

  four-term B:  m[i+1,j+1] = (i+j-1+2a-beta) m[i,j+1]
                  + ((1-i-j)(a+1) + (-3+i+3j+4a) beta) m[i,j]
                  + (-2j+4)(a+1)(beta-1) m[i,j-1]             (i >= 1)

Four-term A walks down a column to the next column; B walks along a row to
the next row; each solved variant runs one of these backwards when its
pivot coefficient is nonzero (A: i != 2; B: j != 2).

``fill_table`` populates an (I+1) x (J+1) table from the three seeds alone
in a fixed deterministic order and records per-entry provenance; the
quadrature route exists separately (``quadrature_table``) purely as a
cross-check and is never consulted by the fill.
"""

from dataclasses import dataclass, field

from . import _backend as mp
from .errors import CoverageError, DomainError, SingularCoefficientError
from .numerics import gamma, integrate_adjusted, upper_incomplete_gamma
from .basis import half_ceil, half_floor

PROV_INITIAL = "initial"
PROV_THREE = "three_term"
PROV_FOUR_A = "four_term_a"
PROV_FOUR_B = "four_term_b"
PROV_QUAD = "quadrature"


def initial_moments(ctx):
    """The three seed moments (m[2,2], m[1,2], m[2,1]).

    m[2,2] = 4 Gamma(1+alpha) by complete cancellation of the shifted
    factors against the weight's denominator; the off-diagonal seeds
    reduce to single-pole integrals expressible through the upper
    incomplete Gamma at negative first argument:

        m[1,2] = 4 e^(-r) (-r)^alpha Gamma(1+alpha) Gamma(-alpha, -r)
        m[2,1] = 4 e^(-s) (-s)^alpha Gamma(1+alpha) Gamma(-alpha, -s)
    """
    prec = ctx.precision
    with mp.workprec(prec + 32):
        a = ctx.alpha
        g1a = gamma(a + 1, prec + 32)
        mu22 = 4 * g1a

        def offdiag(root):
            d = -root
            return 4 * mp.exp(d + a * mp.log(d)) * g1a * upper_incomplete_gamma(
                -a, d, prec + 32
            )

        mu12 = offdiag(ctx.r)
        mu21 = offdiag(ctx.s)
    with mp.workprec(prec):
        return mp.mpf(mu22), mp.mpf(mu12), mp.mpf(mu21)


def _coeffs_a(i, j, ctx):
    a, b = ctx.alpha, ctx.beta
    return (
        i + j - 1 + 2 * a + b,
        (1 - i - j) * (a + 1) + (3 - 3 * i - j - 4 * a) * b,
        (2 * i - 4) * (a + 1) * (b + 1),
    )


def _coeffs_b(i, j, ctx):
    a, b = ctx.alpha, ctx.beta
    return (
        i + j - 1 + 2 * a - b,
        (1 - i - j) * (a + 1) + (-3 + i + 3 * j + 4 * a) * b,
        (-2 * j + 4) * (a + 1) * (b - 1),
    )


def _check_ft_domain(i, j):
    if i < 1 or j < 0:
        raise DomainError(f"four-term recursion requires i >= 1, j >= 0, got ({i}, {j})")


def three_term(mu_ij, mu_i_j1, ctx):
    """Forward three-term: m[i+1,j] from m[i,j] and m[i,j+1]."""
    with mp.workprec(ctx.precision):
        return mu_i_j1 + 2 * ctx.beta * mu_ij


def three_term_solved_up(mu_ip1_j, mu_ij, ctx):
    """Solved for m[i,j+1] given m[i+1,j] and m[i,j]."""
    with mp.workprec(ctx.precision):
        return mu_ip1_j - 2 * ctx.beta * mu_ij


def three_term_solved_mid(mu_ip1_j, mu_i_j1, ctx):
    """Solved for m[i,j] given m[i+1,j] and m[i,j+1]."""
    with mp.workprec(ctx.precision):
        return (mu_ip1_j - mu_i_j1) / (2 * ctx.beta)


def four_term_a(mu_ip1_j, mu_ij, mu_im1_j, i, j, ctx):
    """Forward A: m[i+1,j+1] from the column-j triple m[i+1,j], m[i,j], m[i-1,j]."""
    _check_ft_domain(i, j)
    with mp.workprec(ctx.precision):
        c1, c2, c3 = _coeffs_a(i, j, ctx)
        return c1 * mu_ip1_j + c2 * mu_ij + c3 * mu_im1_j


def four_term_a_solved(mu_ip1_jp1, mu_ip1_j, mu_ij, i, j, ctx):
    """A solved for m[i-1,j]; the pivot (2i-4)(alpha+1)(beta+1) needs i != 2."""
    _check_ft_domain(i, j)
    if i == 2:
        raise SingularCoefficientError(
            "four-term A cannot be solved for m[i-1,j] at i = 2 "
            "(pivot coefficient (2i-4)(alpha+1)(beta+1) vanishes)"
        )
    with mp.workprec(ctx.precision):
        c1, c2, c3 = _coeffs_a(i, j, ctx)
        return (mu_ip1_jp1 - c1 * mu_ip1_j - c2 * mu_ij) / c3


def four_term_b(mu_i_jp1, mu_ij, mu_i_jm1, i, j, ctx):
    """Forward B: m[i+1,j+1] from the row-i triple m[i,j+1], m[i,j], m[i,j-1]."""
    _check_ft_domain(i, j)
    with mp.workprec(ctx.precision):
        c1, c2, c3 = _coeffs_b(i, j, ctx)
        return c1 * mu_i_jp1 + c2 * mu_ij + c3 * mu_i_jm1


def four_term_b_solved(mu_ip1_jp1, mu_i_jp1, mu_ij, i, j, ctx):
    """B solved for m[i,j-1]; the pivot (-2j+4)(alpha+1)(beta-1) needs j != 2."""
    _check_ft_domain(i, j)
    if j == 2:
        raise SingularCoefficientError(
            "four-term B cannot be solved for m[i,j-1] at j = 2 "
            "(pivot coefficient (-2j+4)(alpha+1)(beta-1) vanishes)"
        )
    with mp.workprec(ctx.precision):
        c1, c2, c3 = _coeffs_b(i, j, ctx)
        return (mu_ip1_jp1 - c1 * mu_i_jp1 - c2 * mu_ij) / c3


@dataclass
class MomentTable:
    """Filled adjusted-moment array with per-entry provenance.

    Treat as read-only once filled; a completed table is safe to share
    across threads.
    """

    ctx: object
    imax: int
    jmax: int
    values: list = field(repr=False)
    provenance: list = field(repr=False)

    def covers(self, i, j):
        return 0 <= i <= self.imax and 0 <= j <= self.jmax

    def get(self, i, j):
        if not self.covers(i, j):
            raise CoverageError(i, j, self.imax, self.jmax)
        return self.values[i][j]

    def tag(self, i, j):
        if not self.covers(i, j):
            raise CoverageError(i, j, self.imax, self.jmax)
        return self.provenance[i][j]

    def inner_product(self, p, q):
        """<p, q> for ShiftedPolys via <B_j, B_k> = m[jc+kc, jf+kf]."""
        with mp.workprec(self.ctx.precision):
            total = mp.mpf(0)
            for jdx, av in enumerate(p.coeffs):
                if av == 0:
                    continue
                for kdx, bv in enumerate(q.coeffs):
                    if bv == 0:
                        continue
                    m = self.get(
                        half_ceil(jdx) + half_ceil(kdx),
                        half_floor(jdx) + half_floor(kdx),
                    )
                    total = total + av * bv * m
            return total

    def rows(self):
        """(i, j, value, provenance) in row-major order."""
        for i in range(self.imax + 1):
            for j in range(self.jmax + 1):
                yield i, j, self.values[i][j], self.provenance[i][j]


def fill_table(ctx, imax, jmax, swap_four_term_roles=False):
    """Fill the (imax+1) x (jmax+1) table from the three seeds.

    Deterministic schedule (letters match the seed-block picture):

    1. seeds m[2,2], m[1,2], m[2,1]                      (A)
    2. m[1,1] by the solved three-term                   (B)
    3. m[0,1] by solved four-term A at (1,1) and
       m[1,0] by solved four-term B at (1,1)             (C)
    4. m[0,0] by the solved three-term                   (D)
    5. m[0,2] and m[2,0] by three-term forms
    6. top band rows 0..2, left band columns 0..2, then the interior,
       each new row/column closed with a forward four-term step whose
       preconditions hold by construction.

    ``swap_four_term_roles`` exchanges the A/B roles at every closing cell
    where both recursions apply, giving an independent fill path used to
    test path-invariance of the table.
    """
    imax, jmax = int(imax), int(jmax)
    if imax < 2 or jmax < 2:
        raise DomainError(f"table extents must be >= 2, got ({imax}, {jmax})")

    prec = ctx.precision
    values = [[None] * (jmax + 1) for _ in range(imax + 1)]
    prov = [[None] * (jmax + 1) for _ in range(imax + 1)]

    def put(i, j, value, tag):
        values[i][j] = value
        prov[i][j] = tag

    with mp.workprec(prec):
        mu22, mu12, mu21 = initial_moments(ctx)
        put(2, 2, mu22, PROV_INITIAL)
        put(1, 2, mu12, PROV_INITIAL)
        put(2, 1, mu21, PROV_INITIAL)

        put(1, 1, three_term_solved_mid(mu21, mu12, ctx), PROV_THREE)
        put(
            0, 1,
            four_term_a_solved(mu22, mu21, values[1][1], 1, 1, ctx),
            PROV_FOUR_A,
        )
        put(
            1, 0,
            four_term_b_solved(mu22, mu12, values[1][1], 1, 1, ctx),
            PROV_FOUR_B,
        )
        put(0, 0, three_term_solved_mid(values[1][0], values[0][1], ctx), PROV_THREE)
        put(0, 2, three_term_solved_up(values[1][1], values[0][1], ctx), PROV_THREE)
        put(2, 0, three_term(values[1][0], values[1][1], ctx), PROV_THREE)

        def close_with_a(i, j):
            # target (i, j) from column j-1 rows i-2..i
            return four_term_a(
                values[i][j - 1], values[i - 1][j - 1], values[i - 2][j - 1],
                i - 1, j - 1, ctx,
            )

        def close_with_b(i, j):
            # target (i, j) from row i-1 columns j-2..j
            return four_term_b(
                values[i - 1][j], values[i - 1][j - 1], values[i - 1][j - 2],
                i - 1, j - 1, ctx,
            )

        def close(i, j, prefer_b):
            if prefer_b != swap_four_term_roles:
                return close_with_b(i, j), PROV_FOUR_B
            return close_with_a(i, j), PROV_FOUR_A

        # top band: rows 0..2, columns 3..jmax
        for c in range(3, jmax + 1):
            put(0, c, three_term_solved_up(values[1][c - 1], values[0][c - 1], ctx),
                PROV_THREE)
            put(1, c, three_term_solved_up(values[2][c - 1], values[1][c - 1], ctx),
                PROV_THREE)
            put(2, c, *close(2, c, prefer_b=True))

        # left band: columns 0..2, rows 3..imax
        for r in range(3, imax + 1):
            put(r, 0, three_term(values[r - 1][0], values[r - 1][1], ctx), PROV_THREE)
            put(r, 1, three_term(values[r - 1][1], values[r - 1][2], ctx), PROV_THREE)
            put(r, 2, *close(r, 2, prefer_b=False))

        # interior, row by row; last column closed by a four-term step
        for r in range(3, imax + 1):
            for c in range(3, jmax + 1):
                if c < jmax:
                    put(r, c, three_term(values[r - 1][c], values[r - 1][c + 1], ctx),
                        PROV_THREE)
                else:
                    put(r, c, *close(r, c, prefer_b=False))

    return MomentTable(ctx=ctx, imax=imax, jmax=jmax, values=values, provenance=prov)


def quadrature_table(ctx, imax, jmax, rule):
    """Moment table estimated entry-by-entry with the quadrature rule."""
    imax, jmax = int(imax), int(jmax)
    if imax < 0 or jmax < 0:
        raise DomainError(f"table extents must be >= 0, got ({imax}, {jmax})")
    values = [
        [integrate_adjusted(rule, i, j, ctx) for j in range(jmax + 1)]
        for i in range(imax + 1)
    ]
    prov = [[PROV_QUAD] * (jmax + 1) for _ in range(imax + 1)]
    return MomentTable(ctx=ctx, imax=imax, jmax=jmax, values=values, provenance=prov)


def required_coverage(n):
    """Table extents needed by the degree-n moment matrix and inner products."""
    if n < 2:
        raise DomainError(f"exceptional degree must be >= 2, got {n}")
    return 2 * half_ceil(n), max(2 * half_floor(n), half_floor(n) + 1)


def table_csv(table, digits):
    """CSV serialization: header ``i,j,value,provenance``, full precision."""
    lines = ["i,j,value,provenance"]
    for i, j, value, tag in table.rows():
        lines.append(f"{i},{j},{mp.sci_str(value, digits)},{tag}")
    return "\n".join(lines) + "\n"
