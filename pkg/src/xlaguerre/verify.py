"""Independent validation suite.

Residual operations (exceptional conditions, the eigenvalue identity as an
exact polynomial identity, orthogonality under the moment inner product)
plus ``run_suite``, which executes every invariant the package promises
over a list of alpha values and degrees 2..n_max and returns a
:class:`VerificationReport` suitable for JSON export and CI gating.

The eigenvalue identity is checked coefficient-wise after multiplying
through by N(x) = L_2^(alpha-1)(-x), so no non-polynomial logarithmic
derivative is ever evaluated:

    R = -x N p'' + ((x-alpha-1) N + 2 x N') p' + (2 alpha N' - 2 N) p
        - (n-2) N p

must vanish identically for a degree-n exceptional polynomial.

Checks that compare recursion values against the quadrature oracle size
the rule by the truncation model of ``numerics.suggested_node_count``;
the 200-node default cannot push the near-axis pole error below the
tolerances these checks assert (see the node-doubling records, which
measure exactly that truncation).
"""

import random
from dataclasses import dataclass, field

from . import _backend as mp
from .basis import basis_element, flag_element, flag_element_shifted, from_monomial, to_monomial
from .classical import MonomialPoly, ParameterContext, closed_form_xop, laguerre, negate_argument
from .determinantal import build_matrix, construct, normalize_leading, solve_representation_a, solve_representation_b
from .errors import DomainError
from .linalg import determinant
from .moments import fill_table, required_coverage, four_term_a, four_term_b
from .numerics import (
    DEFAULT_QUAD_NODES,
    gamma,
    gauss_laguerre_rule,
    integrate_adjusted,
    exp_integral_E,
    predicted_truncation_error,
    suggested_node_count,
    upper_incomplete_gamma,
)


@dataclass
class CheckRecord:
    check: str
    params: dict
    residual: object
    tolerance: object
    passed: bool
    error: str = ""


@dataclass
class VerificationReport:
    alphas: list
    n_max: int
    precision: int
    quad_nodes: int
    records: list = field(default_factory=list)

    @property
    def passed_count(self):
        return sum(1 for r in self.records if r.passed)

    @property
    def failed_count(self):
        return sum(1 for r in self.records if not r.passed)

    @property
    def all_passed(self):
        return self.failed_count == 0


def exceptional_residuals(p, ctx):
    """Scale-free residuals of the two exceptional conditions at r and s."""
    with mp.workprec(ctx.precision):
        dp = p.derivative()
        scale = p.max_abs_coefficient()
        if scale < 1:
            scale = mp.mpf(1)
        res_r = (ctx.r * dp(ctx.r) + ctx.alpha * p(ctx.r)) / scale
        res_s = (ctx.s * dp(ctx.s) + ctx.alpha * p(ctx.s)) / scale
        return res_r, res_s


def operator_identity_residual(p, n, ctx):
    """Coefficient-max residual of the eigenvalue identity at eigenvalue n-2."""
    if p.degree != n:
        raise DomainError(
            f"polynomial degree {p.degree} does not match requested n={n}"
        )
    if n < 2:
        raise DomainError(f"eigenvalue identity needs degree >= 2, got {n}")
    prec = ctx.precision
    with mp.workprec(prec):
        a = ctx.alpha
        big_n = negate_argument(laguerre(2, a - 1, ctx))
        big_n_prime = big_n.derivative()
        p1 = p.derivative()
        p2 = p1.derivative()
        # -x N p'' term
        term2 = -(big_n * p2).shift_up()
        # ((x - alpha - 1) N + 2 x N') p'
        coeff1 = big_n.shift_up() - (a + 1) * big_n + 2 * big_n_prime.shift_up()
        term1 = coeff1 * p1
        # (2 alpha N' - 2 N) p
        term0 = (2 * a * big_n_prime - 2 * big_n) * p
        eig = (n - 2) * (big_n * p)
        resid_poly = term2 + term1 + term0 - eig
        scale = eig.max_abs_coefficient()
        if scale < 1:
            scale = mp.mpf(1)
        return resid_poly.max_abs_coefficient() / scale


def orthogonality_residual(p, q, table, ctx):
    """|<p, q>| / (||p|| ||q||) under the moment inner product."""
    with mp.workprec(ctx.precision):
        sp = from_monomial(p, ctx)
        sq = from_monomial(q, ctx)
        num = abs(table.inner_product(sp, sq))
        norm_p = table.inner_product(sp, sp)
        norm_q = table.inner_product(sq, sq)
        return num / (mp.sqrt(norm_p) * mp.sqrt(norm_q))


def quadrature_inner_product(p, q, ctx, rule):
    """<p, q> under the exceptional weight, by quadrature."""
    with mp.workprec(ctx.precision):
        total = mp.mpf(0)
        for x, w in zip(rule.nodes, rule.weights):
            u = x - ctx.r
            v = x - ctx.s
            total = total + w * p(x) * q(x) * 4 / (u * u * v * v)
        return total


def _tol(bits_above, precision):
    return mp.mpf(2) ** (bits_above - precision)


def _random_poly(rng, degree, prec):
    with mp.workprec(prec):
        coeffs = [mp.mpf(rng.uniform(-4, 4)) for _ in range(degree + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = mp.mpf(1)
        return MonomialPoly(coeffs, prec)


class _SuiteRunner:
    """Executes the invariants for one alpha and appends records."""

    def __init__(self, report, ctx, n_max, quad_nodes):
        self.report = report
        self.ctx = ctx
        self.n_max = n_max
        self.quad_nodes = quad_nodes
        self.alpha_label = mp.sci_str(ctx.alpha, 12)
        self._table = None
        self._grid = None

    # -- plumbing ---------------------------------------------------------

    def record(self, check, params, residual, tolerance, passed):
        self.report.records.append(
            CheckRecord(
                check=check,
                params={"alpha": self.alpha_label, **params},
                residual=residual,
                tolerance=tolerance,
                passed=bool(passed),
            )
        )

    def record_residual(self, check, params, residual, tolerance):
        self.record(check, params, residual, tolerance, residual <= tolerance)

    def guarded(self, fn):
        try:
            fn()
        except Exception as exc:  # failing record, never a crash
            self.report.records.append(
                CheckRecord(
                    check=fn.__name__.replace("check_", "", 1),
                    params={"alpha": self.alpha_label},
                    residual=None,
                    tolerance=None,
                    passed=False,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )

    def table(self):
        if self._table is None:
            imax, jmax = required_coverage(max(self.n_max, 8))
            self._table = fill_table(self.ctx, max(imax, 8), max(jmax, 8))
        return self._table

    def grid_rule(self):
        """Rule sized so the 9x9 moment grid is trustworthy to ~1e-27."""
        if self._grid is None:
            nodes = max(self.quad_nodes, suggested_node_count(self.ctx, 27))
            self._grid = gauss_laguerre_rule(
                self.ctx.alpha, nodes, self.ctx.precision
            )
        return self._grid

    # -- numerics ----------------------------------------------------------

    def check_gamma_recurrence(self):
        prec = self.ctx.precision
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for x in ("0.5", "1", "2.5", "4"):
                xv = mp.mpf(x)
                lhs = gamma(xv + 1, prec)
                rhs = xv * gamma(xv, prec)
                worst = max(worst, abs(lhs - rhs) / abs(lhs))
        self.record_residual(
            "numerics.gamma_recurrence", {"x": "0.5,1,2.5,4"}, worst, _tol(8, prec)
        )

    def check_exp_integral_identity(self):
        prec = self.ctx.precision
        with mp.workprec(prec):
            pairs = [
                (mp.mpf("0.5"), mp.mpf("0.7")),
                (mp.mpf(2), mp.mpf(1)),
                (1 + self.ctx.alpha, -self.ctx.r),
                (1 + self.ctx.alpha, -self.ctx.s),
                (mp.mpf(0), mp.mpf("1.5")),
            ]
            worst = mp.mpf(0)
            for a, x in pairs:
                lhs = exp_integral_E(a, x, prec)
                rhs = mp.exp((a - 1) * mp.log(x)) * upper_incomplete_gamma(
                    1 - a, x, prec
                )
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
        self.record_residual(
            "numerics.exp_integral_identity", {"pairs": len(pairs)}, worst,
            _tol(16, prec),
        )

    def check_rule_exactness(self):
        prec = self.ctx.precision
        rule = gauss_laguerre_rule(self.ctx.alpha, self.quad_nodes, prec)
        digits = int(prec * 0.30103)
        with mp.workprec(prec):
            worst = mp.mpf(0)
            powers = [mp.mpf(1)] * rule.node_count
            acc = []
            for _ in range(2 * rule.node_count):
                acc.append(
                    sum(w * p for w, p in zip(rule.weights, powers))
                )
                powers = [p * x for p, x in zip(powers, rule.nodes)]
            for k, got in enumerate(acc):
                exact = gamma(self.ctx.alpha + k + 1, prec)
                worst = max(worst, abs(got - exact) / exact)
            tol = mp.mpf(10) ** (-int(0.8 * digits))
        self.record_residual(
            "numerics.rule_exactness",
            {"nodes": rule.node_count, "max_power": 2 * rule.node_count - 1},
            worst, tol,
        )

    def check_quadrature_convergence(self):
        prec = self.ctx.precision
        ctx = self.ctx
        digits = int(prec * 0.30103)
        rule1 = gauss_laguerre_rule(ctx.alpha, self.quad_nodes, prec)
        rule2 = gauss_laguerre_rule(ctx.alpha, 2 * self.quad_nodes, prec)
        with mp.workprec(prec):
            worst_poly = mp.mpf(0)
            worst_rat = mp.mpf(0)
            for i in range(9):
                for j in range(9):
                    one = integrate_adjusted(rule1, i, j, ctx)
                    two = integrate_adjusted(rule2, i, j, ctx)
                    change = abs(one - two) / abs(two)
                    if i >= 2 and j >= 2:
                        worst_poly = max(worst_poly, change)
                    else:
                        worst_rat = max(worst_rat, change)
            tol_poly = mp.mpf(10) ** (-(digits // 2))
            model = predicted_truncation_error(ctx, self.quad_nodes) + \
                predicted_truncation_error(ctx, 2 * self.quad_nodes)
            tol_rat = max(tol_poly, 4 * mp.mpf(model))
        self.record_residual(
            "numerics.quadrature_convergence_polynomial",
            {"nodes": self.quad_nodes}, worst_poly, tol_poly,
        )
        self.record_residual(
            "numerics.quadrature_convergence_rational",
            {"nodes": self.quad_nodes, "model_bound": mp.sci_str(mp.mpf(model), 4)},
            worst_rat, tol_rat,
        )

    def check_precision_doubling(self):
        prec = self.ctx.precision
        hi = 2 * prec
        digits = int(prec * 0.30103)
        ctx_hi = ParameterContext.create(mp.sci_str(self.ctx.alpha, 60), hi)
        lo_tbl = fill_table(self.ctx, 5, 5)
        hi_tbl = fill_table(ctx_hi, 5, 5)
        with mp.workprec(hi):
            worst = mp.mpf(0)
            for i in range(6):
                for j in range(6):
                    dev = abs(lo_tbl.get(i, j) - hi_tbl.get(i, j)) / abs(
                        hi_tbl.get(i, j)
                    )
                    worst = max(worst, dev)
            g_lo = gamma(mp.mpf("2.5"), prec)
            g_hi = gamma(mp.mpf("2.5"), hi)
            worst = max(worst, abs(g_lo - g_hi) / abs(g_hi))
            u_lo = upper_incomplete_gamma(-self.ctx.alpha, -self.ctx.r, prec)
            u_hi = upper_incomplete_gamma(-ctx_hi.alpha, -ctx_hi.r, hi)
            worst = max(worst, abs(u_lo - u_hi) / abs(u_hi))
            rule_lo = gauss_laguerre_rule(self.ctx.alpha, 24, prec)
            rule_hi = gauss_laguerre_rule(ctx_hi.alpha, 24, hi)
            q_lo = integrate_adjusted(rule_lo, 2, 2, self.ctx)
            q_hi = integrate_adjusted(rule_hi, 2, 2, ctx_hi)
            worst = max(worst, abs(q_lo - q_hi) / abs(q_hi))
            tol = mp.mpf(10) ** (-(digits - 2))
        self.record_residual(
            "numerics.precision_doubling", {"precision": prec, "doubled": hi},
            worst, tol,
        )

    # -- classical ---------------------------------------------------------

    def check_classical_recurrence(self):
        prec = self.ctx.precision
        ctx = self.ctx
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for shift in (0, -1):
                a = ctx.alpha + shift
                for n in range(1, 12):
                    ln = laguerre(n, a, ctx)
                    lp = laguerre(n - 1, a, ctx)
                    lnext = laguerre(n + 1, a, ctx)
                    lhs = (n + 1) * lnext
                    rhs = (2 * n + 1 + a) * ln - ln.shift_up() - (n + a) * lp
                    diff = lhs - rhs
                    scale = max(lhs.max_abs_coefficient(), mp.mpf(1))
                    worst = max(worst, diff.max_abs_coefficient() / scale)
        self.record_residual(
            "classical.three_term_recurrence", {"n_max": 12}, worst, _tol(16, prec)
        )

    def check_closed_form_shape(self):
        ctx = self.ctx
        with mp.workprec(ctx.precision):
            ok = True
            for n in range(2, 13):
                p = closed_form_xop(n, ctx)
                if p.degree != n or p.leading_coefficient() == 0:
                    ok = False
        self.record("classical.closed_form_degree", {"n": "2..12"}, None, None, ok)

    def check_closed_form_exceptional(self):
        ctx = self.ctx
        prec = ctx.precision
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for n in range(2, 13):
                res_r, res_s = exceptional_residuals(closed_form_xop(n, ctx), ctx)
                worst = max(worst, abs(res_r), abs(res_s))
        self.record_residual(
            "classical.closed_form_exceptional", {"n": "2..12"}, worst, _tol(32, prec)
        )

    # -- basis --------------------------------------------------------------

    def check_basis_roundtrip(self):
        ctx = self.ctx
        prec = ctx.precision
        rng = random.Random(20240901)
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for _ in range(6):
                p = _random_poly(rng, rng.randint(0, 10), prec)
                back = to_monomial(from_monomial(p, ctx))
                diff = back - p
                scale = max(p.max_abs_coefficient(), mp.mpf(1))
                worst = max(worst, diff.max_abs_coefficient() / scale)
        self.record_residual(
            "basis.roundtrip", {"cases": 6, "max_degree": 10}, worst, _tol(16, prec)
        )

    def check_flag_conditions(self):
        ctx = self.ctx
        prec = ctx.precision
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for l in range(2, 9):
                res_r, res_s = exceptional_residuals(flag_element(l, ctx), ctx)
                worst = max(worst, abs(res_r), abs(res_s))
        self.record_residual(
            "basis.flag_conditions", {"l": "2..8"}, worst, _tol(32, prec)
        )

    def check_flag_v3_form(self):
        ctx = self.ctx
        prec = ctx.precision
        with mp.workprec(prec):
            direct = flag_element(3, ctx)
            # (x-r)^2 (x-s) + (x-r)^2, assembled from basis elements
            xr = basis_element(1, ctx)
            alt = basis_element(3, ctx) + xr * xr
            via_shifted = to_monomial(flag_element_shifted(3, ctx))
            scale = max(direct.max_abs_coefficient(), mp.mpf(1))
            worst = max(
                (direct - alt).max_abs_coefficient() / scale,
                (direct - via_shifted).max_abs_coefficient() / scale,
            )
        self.record_residual("basis.flag_v3_form", {}, worst, _tol(16, prec))

    def check_dimension_property(self):
        """Two exceptional conditions cut P_{2+k} down to dimension k+1."""
        ctx = self.ctx
        prec = ctx.precision
        with mp.workprec(prec):
            ok = True
            worst = mp.mpf(0)
            for k in range(7):
                dim = 2 + k + 1
                # constraint rows: monomial x^m -> (m + alpha) * root^m
                rows = []
                for root in (ctx.r, ctx.s):
                    rows.append([(m + ctx.alpha) * root ** m for m in range(dim)])
                # rank 2 <=> some 2x2 minor is far from zero relative to scale
                best = mp.mpf(0)
                scale = max(abs(e) for row in rows for e in row)
                for c1 in range(dim):
                    for c2 in range(c1 + 1, dim):
                        minor = abs(
                            rows[0][c1] * rows[1][c2] - rows[0][c2] * rows[1][c1]
                        )
                        best = max(best, minor)
                if not best > scale * scale * _tol(32, prec):
                    ok = False
                for n in range(2, 3 + k):
                    res_r, res_s = exceptional_residuals(
                        closed_form_xop(n, ctx), ctx
                    )
                    worst = max(worst, abs(res_r), abs(res_s))
        self.record(
            "basis.dimension_property", {"k": "0..6"}, worst, _tol(32, prec),
            ok and worst <= _tol(32, prec),
        )

    # -- moments -------------------------------------------------------------

    def check_moment_quadrature_agreement(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        rule = self.grid_rule()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for i in range(9):
                for j in range(9):
                    q = integrate_adjusted(rule, i, j, ctx)
                    worst = max(worst, abs(table.get(i, j) - q) / abs(q))
            tol = mp.mpf(10) ** (-25)
        self.record_residual(
            "moments.quadrature_agreement",
            {"grid": "9x9", "nodes": rule.node_count}, worst, tol,
        )

    def check_three_term_residuals(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for i in range(table.imax):
                for j in range(table.jmax):
                    lhs = table.get(i + 1, j)
                    resid = abs(
                        lhs - table.get(i, j + 1) - 2 * ctx.beta * table.get(i, j)
                    ) / abs(lhs)
                    worst = max(worst, resid)
        self.record_residual(
            "moments.three_term_residuals", {"grid": "full table"}, worst,
            _tol(48, prec),
        )

    def check_four_term_mutual(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for i in range(2, table.imax + 1):
                for j in range(2, table.jmax + 1):
                    via_a = four_term_a(
                        table.get(i, j - 1), table.get(i - 1, j - 1),
                        table.get(i - 2, j - 1), i - 1, j - 1, ctx,
                    )
                    via_b = four_term_b(
                        table.get(i - 1, j), table.get(i - 1, j - 1),
                        table.get(i - 1, j - 2), i - 1, j - 1, ctx,
                    )
                    worst = max(worst, abs(via_a - via_b) / abs(via_a))
        self.record_residual(
            "moments.four_term_mutual", {}, worst, _tol(48, prec)
        )

    def check_moment_positivity(self):
        table = self.table()
        with mp.workprec(self.ctx.precision):
            ok = True
            for k in range(0, min(table.imax, table.jmax) + 1, 2):
                if not table.get(k, k) > 0:
                    ok = False
        self.record("moments.positivity_even_diagonal", {}, None, None, ok)

    def check_fill_path_invariance(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        alt = fill_table(ctx, table.imax, table.jmax, swap_four_term_roles=True)
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for i in range(table.imax + 1):
                for j in range(table.jmax + 1):
                    a = table.get(i, j)
                    worst = max(worst, abs(a - alt.get(i, j)) / abs(a))
        self.record_residual(
            "moments.fill_path_invariance", {}, worst, _tol(48, prec)
        )

    # -- determinantal --------------------------------------------------------

    def check_cross_method(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for n in range(2, self.n_max + 1):
                ref = to_monomial(
                    normalize_leading(construct(n, table, ctx, "closed-form"), ctx)
                )
                scale = ref.max_abs_coefficient()
                for method in ("det-a", "det-b", "gram-schmidt"):
                    p = to_monomial(
                        normalize_leading(construct(n, table, ctx, method), ctx)
                    )
                    dev = (p - ref).max_abs_coefficient() / scale
                    worst = max(worst, dev)
            tol = mp.mpf(10) ** (-20)
        self.record_residual(
            "determinantal.cross_method", {"n": f"2..{self.n_max}"}, worst, tol
        )

    def check_determinant_nonzero(self):
        """Certify det(M) != 0 at working precision.

        The determinant is recomputed with 64 extra bits; agreement to
        2^(-prec/2) relative shows it stands far above elimination
        roundoff, i.e. the matrix is robustly nonsingular.  (A fixed
        lower bound against max-entry^(n+1) would not be scale-meaningful
        for these mixed-magnitude rows.)
        """
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            ok = True
            for n in range(2, self.n_max + 1):
                mm = build_matrix(n, table, ctx)
                det_lo = determinant([list(r) for r in mm.rows])
                with mp.workprec(prec + 64):
                    det_hi = determinant([list(r) for r in mm.rows])
                if det_lo == 0 or det_hi == 0:
                    ok = False
                    continue
                worst = max(worst, abs(det_lo - det_hi) / abs(det_hi))
            tol = mp.mpf(2) ** (-(prec // 2))
        self.record(
            "determinantal.det_nonzero", {"n": f"2..{self.n_max}"},
            worst, tol, ok and worst <= tol,
        )

    def check_solution_conditions(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for n in range(2, self.n_max + 1):
                p = to_monomial(construct(n, table, ctx, "det-a"))
                res_r, res_s = exceptional_residuals(p, ctx)
                worst = max(worst, abs(res_r), abs(res_s))
        self.record_residual(
            "determinantal.solution_exceptional_conditions",
            {"n": f"2..{self.n_max}"}, worst, _tol(32, prec),
        )

    def check_kn_scaling(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        n = min(5, self.n_max)
        with mp.workprec(prec):
            base = solve_representation_a(build_matrix(n, table, ctx, k_n=1))
            scaled = solve_representation_a(build_matrix(n, table, ctx, k_n=4))
            worst = mp.mpf(0)
            scale = base.max_abs_coefficient()
            for b_c, s_c in zip(base.coeffs, scaled.coeffs):
                worst = max(worst, abs(s_c - 4 * b_c) / scale)
            # normalized polynomials must coincide
            pn1 = to_monomial(normalize_leading(base, ctx))
            pn4 = to_monomial(normalize_leading(scaled, ctx))
            norm_dev = (pn1 - pn4).max_abs_coefficient() / max(
                pn1.max_abs_coefficient(), mp.mpf(1)
            )
            worst = max(worst, norm_dev)
        self.record_residual(
            "determinantal.kn_scaling", {"n": n, "factor": 4}, worst, _tol(16, prec)
        )

    def check_repb_scaling(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for n in range(2, min(8, self.n_max) + 1):
                mm = build_matrix(n, table, ctx)
                pa = solve_representation_a(mm)
                pb = solve_representation_b(mm)
                det = determinant([list(r) for r in mm.rows])
                expected = det / mm.k_n
                for ca, cb in zip(pa.coeffs, pb.coeffs):
                    if ca == 0:
                        continue
                    worst = max(
                        worst, abs(cb / ca - expected) / abs(expected)
                    )
        self.record_residual(
            "determinantal.repb_scaling", {"n": f"2..{min(8, self.n_max)}"},
            worst, _tol(48, prec),
        )

    def check_repb_bordered_eval(self):
        """Cofactor signs against a brute-force bordered determinant."""
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        n = min(4, self.n_max)
        rng = random.Random(77)
        with mp.workprec(prec):
            mm = build_matrix(n, table, ctx)
            pb = to_monomial(solve_representation_b(mm))
            worst = mp.mpf(0)
            for _ in range(3):
                x = mp.mpf(rng.uniform(0.25, 6.0))
                bordered = [list(r) for r in mm.rows[:n]]
                bordered.append(
                    [basis_element(k, ctx)(x) for k in range(n + 1)]
                )
                direct = determinant(bordered)
                val = pb(x)
                worst = max(worst, abs(val - direct) / max(abs(direct), mp.mpf(1)))
        self.record_residual(
            "determinantal.repb_bordered_eval", {"n": n, "points": 3},
            worst, _tol(48, prec),
        )

    # -- verify-level ----------------------------------------------------------

    def check_operator_identity(self):
        ctx = self.ctx
        prec = ctx.precision
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for n in range(2, self.n_max + 1):
                worst = max(
                    worst,
                    operator_identity_residual(closed_form_xop(n, ctx), n, ctx),
                )
        self.record_residual(
            "verify.operator_identity_closed_form", {"n": f"2..{self.n_max}"},
            worst, _tol(40, prec),
        )

    def check_operator_identity_constructed(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for n in range(2, self.n_max + 1):
                for method in ("det-a", "det-b", "gram-schmidt"):
                    p = to_monomial(
                        normalize_leading(construct(n, table, ctx, method), ctx)
                    )
                    worst = max(worst, operator_identity_residual(p, n, ctx))
        self.record_residual(
            "verify.operator_identity_constructed", {"n": f"2..{self.n_max}"},
            worst, _tol(40, prec),
        )

    def check_gram_diagonal(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        top = min(8, max(self.n_max, 2))
        with mp.workprec(prec):
            polys = [
                from_monomial(closed_form_xop(n, ctx), ctx)
                for n in range(2, top + 1)
            ]
            diag = [table.inner_product(p, p) for p in polys]
            ok = all(d > 0 for d in diag)
            worst = mp.mpf(0)
            for i_idx in range(len(polys)):
                for j_idx in range(i_idx + 1, len(polys)):
                    off = abs(table.inner_product(polys[i_idx], polys[j_idx]))
                    rel = off / mp.sqrt(diag[i_idx] * diag[j_idx])
                    worst = max(worst, rel)
            tol = mp.mpf(10) ** (-25)
        self.record(
            "verify.gram_diagonal", {"degrees": f"2..{top}"}, worst, tol,
            ok and worst <= tol,
        )

    def check_moment_vs_quadrature_ip(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        rule = self.grid_rule()
        rng = random.Random(31415)
        with mp.workprec(prec):
            worst = mp.mpf(0)
            for _ in range(10):
                p = _random_poly(rng, rng.randint(0, 6), prec)
                q = _random_poly(rng, rng.randint(0, 6), prec)
                exact = table.inner_product(
                    from_monomial(p, ctx), from_monomial(q, ctx)
                )
                quad = quadrature_inner_product(p, q, ctx, rule)
                scale = max(abs(exact), abs(quad))
                if scale == 0:
                    continue
                worst = max(worst, abs(exact - quad) / scale)
            tol = mp.mpf(10) ** (-20)
        self.record_residual(
            "verify.moment_vs_quadrature_ip",
            {"pairs": 10, "nodes": rule.node_count}, worst, tol,
        )

    def check_degenerate_case(self):
        ctx = self.ctx
        prec = ctx.precision
        table = self.table()
        with mp.workprec(prec):
            v2 = negate_argument(laguerre(2, ctx.alpha, ctx))
            v2 = v2 * (1 / v2.leading_coefficient())
            worst = mp.mpf(0)
            for method in ("det-a", "det-b", "gram-schmidt", "closed-form"):
                p = to_monomial(
                    normalize_leading(construct(2, table, ctx, method), ctx)
                )
                dev = (p - v2).max_abs_coefficient() / v2.max_abs_coefficient()
                worst = max(worst, dev)
        self.record_residual(
            "verify.degenerate_case_v2", {"n": 2}, worst, _tol(32, prec)
        )

    def run(self):
        checks = [
            self.check_gamma_recurrence,
            self.check_exp_integral_identity,
            self.check_rule_exactness,
            self.check_quadrature_convergence,
            self.check_precision_doubling,
            self.check_classical_recurrence,
            self.check_closed_form_shape,
            self.check_closed_form_exceptional,
            self.check_basis_roundtrip,
            self.check_flag_conditions,
            self.check_flag_v3_form,
            self.check_dimension_property,
            self.check_moment_quadrature_agreement,
            self.check_three_term_residuals,
            self.check_four_term_mutual,
            self.check_moment_positivity,
            self.check_fill_path_invariance,
            self.check_cross_method,
            self.check_determinant_nonzero,
            self.check_solution_conditions,
            self.check_kn_scaling,
            self.check_repb_scaling,
            self.check_repb_bordered_eval,
            self.check_operator_identity,
            self.check_operator_identity_constructed,
            self.check_gram_diagonal,
            self.check_moment_vs_quadrature_ip,
            self.check_degenerate_case,
        ]
        for fn in checks:
            self.guarded(fn)


def run_suite(alphas, n_max, precision=256, quad_nodes=DEFAULT_QUAD_NODES):
    """Execute every module invariant for each alpha; deterministic output."""
    n_max = int(n_max)
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    report = VerificationReport(
        alphas=[str(a) for a in alphas],
        n_max=n_max,
        precision=int(precision),
        quad_nodes=int(quad_nodes),
    )
    for alpha in alphas:
        ctx = ParameterContext.create(alpha, precision)
        _SuiteRunner(report, ctx, n_max, int(quad_nodes)).run()
    return report


def report_json_rows(report, digits=24):
    """Render records as JSON-ready plain dicts (numbers as decimal strings)."""

    def fmt(value):
        if value is None:
            return None
        if isinstance(value, str):
            return value
        with mp.workprec(256):
            return mp.sci_str(mp.mpf(value), digits)

    rows = []
    for rec in report.records:
        rows.append(
            {
                "check": rec.check,
                "params": {k: str(v) for k, v in rec.params.items()},
                "residual": fmt(rec.residual),
                "tolerance": fmt(rec.tolerance),
                "pass": rec.passed,
                **({"error": rec.error} if rec.error else {}),
            }
        )
    return rows
