"""Command-line interface.

Four subcommands against a shared set of global flags:

    moments  --alpha A --imax I --jmax J [--method recursion|quadrature]
    poly     --alpha A --n N [--method det-a|det-b|gram-schmidt|closed-form]
             [--basis shifted|monomial] [--normalize]
    matrix   --alpha A --n N
    verify   --alpha A --nmax N

Global flags: --precision BITS (>=128, default 256), --quad-nodes K
(>=8, default 200), --format csv|json, --out PATH.

All numeric output is serialized in decimal scientific notation carrying
the full working precision (JSON numbers are emitted as bare decimal
literals; parse them with ``parse_float=decimal.Decimal`` or equivalent
to avoid silent double rounding -- the ``precision_bits`` field says how
many digits are meaningful).  Identical flags produce byte-identical
output.
"""

import argparse
import sys

from . import _backend as mp
from .basis import from_monomial, to_monomial
from .classical import ParameterContext, closed_form_xop
from .determinantal import build_matrix, construct, normalize_leading
from .errors import XLaguerreError
from .moments import fill_table, quadrature_table, required_coverage, table_csv
from .numerics import DEFAULT_QUAD_NODES, gauss_laguerre_rule
from .verify import report_json_rows, run_suite

POLY_METHODS = ("det-a", "det-b", "gram-schmidt", "closed-form")


def _digits(precision_bits):
    # full working precision in decimal, comfortably above 0.3 * bits
    return int(precision_bits * 0.30103) + 4


class _Raw(str):
    """Marker: emit this string into JSON without quoting."""


def _json_text(value, indent=0):
    pad = "  " * indent
    if isinstance(value, _Raw):
        return str(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {_json_text(str(k))}: {_json_text(v, indent + 1)}'
            for k, v in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ",\n".join(
            f"{pad}  {_json_text(v, indent + 1)}" for v in value
        )
        return "[\n" + inner + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _dec(x, digits):
    return _Raw(mp.sci_str(x, digits))


def _common_header(ctx, digits):
    return {
        "alpha": _dec(ctx.alpha, digits),
        "precision_bits": ctx.precision,
        "r": _dec(ctx.r, digits),
        "s": _dec(ctx.s, digits),
    }


def cmd_moments(args, ctx):
    digits = _digits(ctx.precision)
    if args.method == "recursion":
        if args.imax < 2 or args.jmax < 2:
            raise XLaguerreError("recursion fill needs --imax and --jmax >= 2")
        table = fill_table(ctx, args.imax, args.jmax)
    else:
        rule = gauss_laguerre_rule(ctx.alpha, args.quad_nodes, ctx.precision)
        table = quadrature_table(ctx, args.imax, args.jmax, rule)
    if args.format == "csv":
        return table_csv(table, digits), 0
    rows = [
        {"i": i, "j": j, "value": _dec(value, digits), "provenance": tag}
        for i, j, value, tag in table.rows()
    ]
    doc = {
        **_common_header(ctx, digits),
        "imax": table.imax,
        "jmax": table.jmax,
        "method": args.method,
        "moments": rows,
    }
    return _json_text(doc) + "\n", 0


def cmd_poly(args, ctx):
    digits = _digits(ctx.precision)
    imax, jmax = required_coverage(args.n)
    table = fill_table(ctx, imax, jmax) if args.method != "closed-form" else None
    if args.method == "closed-form":
        shifted = from_monomial(closed_form_xop(args.n, ctx), ctx)
    else:
        shifted = construct(args.n, table, ctx, args.method)
    if args.normalize:
        target = closed_form_xop(args.n, ctx).leading_coefficient()
        shifted = normalize_leading(shifted, ctx, target)
    if args.basis == "shifted":
        coeffs = shifted.coeffs
    else:
        coeffs = to_monomial(shifted).coeffs
    doc = {
        "alpha": _dec(ctx.alpha, digits),
        "n": args.n,
        "method": args.method,
        "basis": args.basis,
        "coefficients": [_dec(c, digits) for c in coeffs],
        "precision_bits": ctx.precision,
        "r": _dec(ctx.r, digits),
        "s": _dec(ctx.s, digits),
    }
    return _json_text(doc) + "\n", 0


def cmd_matrix(args, ctx):
    digits = _digits(ctx.precision)
    imax, jmax = required_coverage(args.n)
    table = fill_table(ctx, imax, jmax)
    mm = build_matrix(args.n, table, ctx)
    doc = {
        **_common_header(ctx, digits),
        "n": mm.n,
        "k_n": _dec(mm.k_n, digits),
        "matrix": [[_dec(e, digits) for e in row] for row in mm.rows],
        "b": [_dec(e, digits) for e in mm.b],
    }
    return _json_text(doc) + "\n", 0


def cmd_verify(args, ctx):
    """Emit the verification report as a JSON array of check records;
    exit 0 iff every record passed."""
    digits = _digits(ctx.precision)
    report = run_suite(
        [ctx.alpha], args.nmax,
        precision=ctx.precision, quad_nodes=args.quad_nodes,
    )
    rows = []
    for row in report_json_rows(report, digits):
        out = dict(row)
        if out.get("residual") is not None:
            out["residual"] = _Raw(out["residual"])
        if out.get("tolerance") is not None:
            out["tolerance"] = _Raw(out["tolerance"])
        rows.append(out)
    return _json_text(rows) + "\n", 0 if report.all_passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xlaguerre",
        description=(
            "Exceptional co-dimension-2 Laguerre polynomials from adjusted "
            "moments: moment tables, determinantal constructions, and a "
            "verification suite, all in extended precision."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format):
        p.add_argument("--alpha", required=True,
                       help="weight exponent alpha > 0 (decimal string)")
        p.add_argument("--precision", type=int, default=256,
                       help="working precision in bits, >= 128 (default 256)")
        p.add_argument("--quad-nodes", type=int, default=DEFAULT_QUAD_NODES,
                       dest="quad_nodes",
                       help="quadrature node count, >= 8 (default 200)")
        p.add_argument("--format", choices=("csv", "json"),
                       default=default_format,
                       help=f"output format (default {default_format})")
        p.add_argument("--out", default=None, help="write output to this file")

    p_mom = sub.add_parser("moments", help="emit an adjusted-moment table")
    common(p_mom, "csv")
    p_mom.add_argument("--imax", type=int, required=True)
    p_mom.add_argument("--jmax", type=int, required=True)
    p_mom.add_argument("--method", choices=("recursion", "quadrature"),
                       default="recursion")
    p_mom.set_defaults(handler=cmd_moments)

    p_poly = sub.add_parser("poly", help="emit one exceptional polynomial")
    common(p_poly, "json")
    p_poly.add_argument("--n", type=int, required=True, help="degree, >= 2")
    p_poly.add_argument("--method", choices=POLY_METHODS, default="det-a")
    p_poly.add_argument("--basis", choices=("shifted", "monomial"),
                        default="shifted")
    p_poly.add_argument("--normalize", action="store_true",
                        help="scale to the closed-form leading coefficient")
    p_poly.set_defaults(handler=cmd_poly)

    p_mat = sub.add_parser("matrix", help="emit the moment matrix M and b")
    common(p_mat, "json")
    p_mat.add_argument("--n", type=int, required=True, help="degree, >= 2")
    p_mat.set_defaults(handler=cmd_matrix)

    p_ver = sub.add_parser("verify", help="run the verification suite")
    common(p_ver, "json")
    p_ver.add_argument("--nmax", type=int, required=True,
                       help="largest degree to verify, >= 2")
    p_ver.set_defaults(handler=cmd_verify)

    return parser


def _validate(parser, args):
    if args.precision < 128:
        parser.error("--precision must be at least 128 bits")
    if args.quad_nodes < 8:
        parser.error("--quad-nodes must be at least 8")
    try:
        ctx = ParameterContext.create(args.alpha, args.precision)
    except (XLaguerreError, ValueError) as exc:
        parser.error(f"--alpha: {exc}")
    if args.command in ("poly", "matrix") and args.n < 2:
        parser.error("--n must be at least 2")
    if args.command == "verify" and args.nmax < 2:
        parser.error("--nmax must be at least 2")
    if args.command == "moments" and (args.imax < 0 or args.jmax < 0):
        parser.error("--imax/--jmax must be nonnegative")
    if args.command != "moments" and args.format == "csv":
        parser.error(f"{args.command} output is JSON only")
    return ctx


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = _validate(parser, args)
    try:
        text, code = args.handler(args, ctx)
    except XLaguerreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
