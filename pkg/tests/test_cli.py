"""Command-line surface: schemas, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from conftest import PREC, rel_err
from xlaguerre import _backend as mp
from xlaguerre.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_moments_csv_contains_seed_row(capsys):
    code, out = run_cli(
        ["moments", "--alpha", "3", "--imax", "2", "--jmax", "2",
         "--method", "recursion"], capsys,
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "i,j,value,provenance"
    row22 = next(l for l in lines[1:] if l.startswith("2,2,"))
    _, _, value, prov = row22.split(",")
    assert prov == "initial"
    with mp.workprec(PREC):
        assert rel_err(mp.mpf(value), mp.mpf(24)) < 1e-70
    # full-precision serialization: >= 0.3 * 256 significant digits
    mantissa = value.split("e")[0].lstrip("-").replace(".", "")
    assert len(mantissa) >= 77


def test_moments_quadrature_agrees_with_recursion(capsys):
    code_r, out_r = run_cli(
        ["moments", "--alpha", "3", "--imax", "2", "--jmax", "2"], capsys
    )
    code_q, out_q = run_cli(
        ["moments", "--alpha", "3", "--imax", "2", "--jmax", "2",
         "--method", "quadrature"], capsys,
    )
    assert code_r == code_q == 0

    def parse(text):
        rows = {}
        for line in text.strip().split("\n")[1:]:
            i, j, value, _ = line.split(",")
            rows[(int(i), int(j))] = value
        return rows

    rec, quad = parse(out_r), parse(out_q)
    with mp.workprec(PREC):
        for key, val in rec.items():
            assert rel_err(mp.mpf(quad[key]), mp.mpf(val)) < 1e-25


def test_moments_json_format(capsys):
    code, out = run_cli(
        ["moments", "--alpha", "1", "--imax", "2", "--jmax", "2",
         "--format", "json"], capsys,
    )
    assert code == 0
    doc = json.loads(out, parse_float=str)
    assert doc["precision_bits"] == 256
    assert len(doc["moments"]) == 9
    assert {row["provenance"] for row in doc["moments"]} <= {
        "initial", "three_term", "four_term_a", "four_term_b"
    }


def test_poly_closed_form_monomial_alpha3(capsys):
    code, out = run_cli(
        ["poly", "--alpha", "3", "--n", "2", "--method", "closed-form",
         "--basis", "monomial"], capsys,
    )
    assert code == 0
    doc = json.loads(out, parse_float=str)
    assert doc["n"] == 2 and doc["basis"] == "monomial"
    coeffs = [mp.mpf(c) for c in doc["coefficients"]]
    with mp.workprec(PREC):
        assert rel_err(coeffs[0], mp.mpf(10)) < 1e-70
        assert rel_err(coeffs[1], mp.mpf(5)) < 1e-70
        assert rel_err(coeffs[2], mp.mpf("0.5")) < 1e-70
    with mp.workprec(PREC):
        assert rel_err(mp.mpf(doc["r"]), mp.mpf(-6)) < 1e-70
        assert rel_err(mp.mpf(doc["s"]), mp.mpf(-2)) < 1e-70


def test_poly_det_a_normalized_matches_closed_form(capsys):
    _, out_a = run_cli(
        ["poly", "--alpha", "3", "--n", "5", "--method", "det-a",
         "--basis", "monomial", "--normalize"], capsys,
    )
    _, out_c = run_cli(
        ["poly", "--alpha", "3", "--n", "5", "--method", "closed-form",
         "--basis", "monomial"], capsys,
    )
    ca = [mp.mpf(c) for c in json.loads(out_a, parse_float=str)["coefficients"]]
    cc = [mp.mpf(c) for c in json.loads(out_c, parse_float=str)["coefficients"]]
    with mp.workprec(PREC):
        scale = max(abs(c) for c in cc)
        assert max(abs(a - c) for a, c in zip(ca, cc)) / scale < 1e-20


def test_poly_shifted_basis_converts_to_monomial(capsys, contexts):
    from xlaguerre.basis import ShiftedPoly, to_monomial

    _, out_s = run_cli(
        ["poly", "--alpha", "1", "--n", "4", "--method", "gram-schmidt",
         "--basis", "shifted"], capsys,
    )
    _, out_m = run_cli(
        ["poly", "--alpha", "1", "--n", "4", "--method", "gram-schmidt",
         "--basis", "monomial"], capsys,
    )
    doc_s = json.loads(out_s, parse_float=str)
    doc_m = json.loads(out_m, parse_float=str)
    ctx = contexts["1"]
    with mp.workprec(PREC):
        sp = ShiftedPoly(tuple(mp.mpf(c) for c in doc_s["coefficients"]), ctx)
        mono = to_monomial(sp)
        want = [mp.mpf(c) for c in doc_m["coefficients"]]
        scale = max(abs(c) for c in want)
        for got, exp in zip(mono.coeffs, want):
            assert abs(got - exp) / scale < 1e-70


def test_matrix_rows_alpha3(capsys):
    code, out = run_cli(["matrix", "--alpha", "3", "--n", "3"], capsys)
    assert code == 0
    doc = json.loads(out, parse_float=str)
    top = [float(x) for x in doc["matrix"][0]]
    second = [float(x) for x in doc["matrix"][1]]
    assert top == [3.0, -6.0, 24.0, 0.0]
    assert second == [3.0, 10.0, -8.0, -32.0]
    assert [float(x) for x in doc["b"]] == [0.0, 0.0, 0.0, 1.0]


def test_verify_emits_record_array_and_exit_zero(capsys):
    code, out = run_cli(
        ["verify", "--alpha", "3", "--nmax", "3", "--quad-nodes", "64"], capsys
    )
    records = json.loads(out, parse_float=str)
    assert isinstance(records, list) and len(records) > 20
    assert all(rec["pass"] is True for rec in records)
    assert {"check", "params", "residual", "tolerance", "pass"} <= set(records[0])
    assert code == 0


def test_output_files_byte_identical(tmp_path):
    args = ["moments", "--alpha", "1.5", "--imax", "4", "--jmax", "3"]
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["moments", "--alpha", "-1", "--imax", "2", "--jmax", "2"],
        ["moments", "--alpha", "0", "--imax", "2", "--jmax", "2"],
        ["moments", "--imax", "2", "--jmax", "2"],          # alpha missing
        ["verify", "--nmax", "4"],                          # alpha missing
        ["verify", "--alpha", "1", "--nmax", "1"],
        ["verify", "--alpha", "1", "--nmax", "6", "--precision", "64"],
        ["poly", "--alpha", "1", "--n", "1"],
        ["poly", "--alpha", "1", "--n", "4", "--format", "csv"],
        ["matrix", "--alpha", "1", "--n", "0"],
        ["moments", "--alpha", "1", "--imax", "2", "--jmax", "2",
         "--quad-nodes", "4"],
        ["moments", "--alpha", "nan", "--imax", "2", "--jmax", "2"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_moments_recursion_needs_extent_2(capsys):
    code = main(["moments", "--alpha", "1", "--imax", "1", "--jmax", "2"])
    err = capsys.readouterr().err
    assert code == 2
    assert "imax" in err


def test_moments_quadrature_allows_small_extents(capsys):
    code, out = run_cli(
        ["moments", "--alpha", "1", "--imax", "1", "--jmax", "0",
         "--method", "quadrature", "--quad-nodes", "32"], capsys,
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 1 + 2 * 1
    assert all(line.endswith("quadrature") for line in lines[1:])


def test_verify_exit_one_when_any_record_fails(capsys, monkeypatch):
    import xlaguerre.cli as cli_mod
    from xlaguerre.verify import CheckRecord, VerificationReport

    def fake_suite(alphas, n_max, precision=256, quad_nodes=200):
        report = VerificationReport(
            alphas=[str(a) for a in alphas], n_max=n_max,
            precision=precision, quad_nodes=quad_nodes,
        )
        report.records.append(
            CheckRecord(check="synthetic.failure", params={"alpha": "1"},
                        residual=1.0, tolerance=0.5, passed=False)
        )
        return report

    monkeypatch.setattr(cli_mod, "run_suite", fake_suite)
    code, out = run_cli(["verify", "--alpha", "1", "--nmax", "2"], capsys)
    assert code == 1
    records = json.loads(out, parse_float=str)
    assert records[0]["pass"] is False


def test_console_script_installed():
    out = subprocess.run(
        [sys.executable, "-m", "xlaguerre.cli", "--help"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    for sub in ("moments", "poly", "matrix", "verify"):
        assert sub in out.stdout
