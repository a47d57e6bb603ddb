import csv
import io
import json
import math
import subprocess
import sys

import pytest

from benford_bounds.cli import (
    ReportEnvelope,
    cmd_digits,
    cmd_gauss,
    cmd_table1,
    main,
    parse_model,
    to_csv,
    to_json,
)
from benford_bounds.densities import Family

from conftest import PEAK_KNOTS, PEAK_VALUES, TABLE1, TABLE1_MINIMA, sig_equal


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------


def test_table1_examples():
    rows = cmd_table1().rows
    assert len(rows) == 15
    assert sig_equal(rows[0]["tv"], 7.3576e-1, 5)
    assert sig_equal(rows[0]["B_1.0"], 8.4707e-1, 5)
    assert sig_equal(rows[10]["tv"], 3.1140e5, 5)
    assert sig_equal(rows[10]["B_0.3"], 4.4003e-5, 5)


def test_table1_all_cells():
    for row in cmd_table1().rows:
        ref = TABLE1[row["k"]]
        got = (row["tv"], row["B_1.0"], row["B_0.5"], row["B_0.3"])
        for g, r in zip(got, ref):
            assert sig_equal(g, r, 4), (row["k"], g, r)


def test_table1_minima_markers():
    rows = cmd_table1().rows
    marked = {float(t): r["k"] for r in rows for t in filter(None, r["minimum_for"].split(";"))}
    assert marked == TABLE1_MINIMA


def test_table1_kmax_limit():
    with pytest.raises(ValueError):
        cmd_table1(21)
    assert len(cmd_table1(20).rows) == 21


def test_table1_custom_taus_and_shared_minimum():
    rows = cmd_table1(14, taus=(0.5, 0.5000001)).rows
    assert [r["k"] for r in rows if r["minimum_for"]] == [7]


def test_table1_csv_output(capsys):
    code, out = run(capsys, "table1")
    assert code == 0
    rows = csv_rows(out)
    assert list(rows[0]) == ["k", "tv", "B_1.0", "B_0.5", "B_0.3", "minimum_for"]
    assert rows[12]["B_0.3"] == "3.68011e-05"
    assert rows[12]["minimum_for"] == "0.3"


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_json_valid_and_sorted(capsys):
    code, out = run(capsys, "table1", "--format", "json", "--kmax", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["format_version"] == "1"
    assert doc["command"] == "table1"
    assert len(doc["rows"]) == 4
    assert list(doc) == sorted(doc)
    assert all(list(r) == sorted(r) for r in doc["rows"])


def test_float_format_six_significant():
    env = ReportEnvelope("x", {"a": 1 / 3}, [{"v": math.pi, "flag": True, "n": 3}])
    text = to_json(env)
    assert '"v": 3.14159e+00' in text
    assert '"a": 3.33333e-01' in text
    assert to_csv(env) == "v,flag,n\n3.14159e+00,true,3\n"


def test_json_nonfinite_as_string():
    doc = json.loads(to_json(ReportEnvelope("x", {"a": math.inf}, [])))
    assert doc["params"]["a"] == "inf"


@pytest.mark.parametrize("argv", [
    ("table1", "--format", "json"),
    ("gauss", "1", "2", "--verify"),
    ("digits", "--model", "weibull:tau=0.5,gamma=3.7", "1@10", "23@10", "1a@16", "11@2"),
])
def test_byte_identical(capsys, argv):
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b and a


def test_console_entry_points():
    args = ["table1", "--kmax", "2"]
    a = subprocess.run([sys.executable, "-m", "benford_bounds", *args],
                       capture_output=True, text=True, check=True).stdout
    b = main_output(args)
    assert a == b


def main_output(args):
    buf = io.StringIO()
    old, sys.stdout = sys.stdout, buf
    try:
        main(args)
    finally:
        sys.stdout = old
    return buf.getvalue()


# ---------------------------------------------------------------------------
# gauss
# ---------------------------------------------------------------------------


def test_gauss_sigma1():
    row = cmd_gauss([1.0]).rows[0]
    assert row["m"] == 36
    assert row["range_bound"] == pytest.approx(2.661e-7, rel=1e-3)
    assert row["kuiper_bound"] == pytest.approx(4.435e-8, rel=1e-3)
    assert row["mrae_bound"] == pytest.approx(1.774e-7, rel=1e-3)
    assert row["scan_kuiper_bound"] <= row["kuiper_bound"]


def test_gauss_sigma_sixth(capsys):
    code, out = run(capsys, "gauss", "1/6")
    assert code == 0
    row = csv_rows(out)[0]
    assert row["m"] == "1"
    assert (row["range_bound"], row["kuiper_bound"], row["mrae_bound"]) == (
        "4.50000e+00", "7.50000e-01", "3.00000e+00")


def test_gauss_verify_sigma2(capsys):
    code, out = run(capsys, "gauss", "2", "--verify", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["ok"] is True
    assert row["measured_kuiper"] <= row["kuiper_bound"] + 1e-12


def test_gauss_rejects_small_sigma(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gauss", "0.1"])
    assert exc.value.code == 2
    assert "sigma >= 1/6" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["gauss", "-1"], ["gauss", "abc"], ["gauss"], [],
                                  ["table1", "--base", "1"], ["nope"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_verify_failure_exit_code(capsys):
    # a negative slack makes any non-zero measured value a violation
    code, out = run(capsys, "gauss", "1", "--verify", "--tol", "-1")
    assert code == 1
    assert csv_rows(out)[0]["ok"] == "false"


# ---------------------------------------------------------------------------
# digits
# ---------------------------------------------------------------------------


def test_digits_first_digit_sweep(capsys):
    prefixes = [f"{d}@10" for d in range(1, 10)]
    code, out = run(capsys, "digits", "--model", "gauss:sigma=1", *prefixes)
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 9
    # six printed digits: compare the unrounded values instead
    env = cmd_digits("gauss:sigma=1", prefixes)
    assert math.fsum(r["exact_p"] for r in env.rows) == pytest.approx(1.0, abs=1e-9)


def test_digits_weibull_certificate():
    row = cmd_digits("weibull:tau=0.3", ["1@10"]).rows[0]
    assert row["certified_bound"] == pytest.approx(3.6801e-5, rel=1e-4)
    assert "tau=0.3" in row["note"]


def test_digits_uniform_exact():
    row = cmd_digits("uniform:width=1", ["7@10"], verify=True).rows[0]
    assert row["exact_p"] == pytest.approx(math.log10(8 / 7), rel=1e-14)
    assert row["rel_err"] == pytest.approx(0.0, abs=1e-14)
    assert row["ok"] is True


def test_digits_mixed_bases():
    rows = cmd_digits("weibull:tau=1", ["1@10", "1@2", "1a@16"]).rows
    assert [r["base"] for r in rows] == [10, 2, 16]
    assert rows[1]["exact_p"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("prefix", ["0@10", "1g@16", "12@", "@10", "1@1"])
def test_digits_malformed_prefix(capsys, prefix):
    with pytest.raises(SystemExit) as exc:
        main(["digits", "--model", "gauss:sigma=1", prefix])
    assert exc.value.code == 2


def test_digits_default_base(capsys):
    code, out = run(capsys, "digits", "--model", "weibull:tau=1", "--base", "16", "f")
    assert code == 0
    assert csv_rows(out)[0]["prefix"] == "f@16"


def test_digits_verify_all_ok(capsys):
    prefixes = [f"{d}{e}@10" for d in range(1, 10) for e in range(10)]
    code, out = run(capsys, "digits", "--verify", "--model", "gauss:sigma=1/3,mu=0.2", *prefixes)
    assert code == 0
    assert {r["ok"] for r in csv_rows(out)} == {"true"}


# ---------------------------------------------------------------------------
# verify and model specs
# ---------------------------------------------------------------------------


def test_verify_command(capsys):
    code, out = run(capsys, "verify", "--model", "uniform:width=1.5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    (row,) = doc["rows"]
    assert row["k"] == 0 and row["best"] is True
    assert row["measured_kuiper"] == pytest.approx(1 / 6, abs=1e-5)
    assert row["kuiper_bound"] == pytest.approx(1 / 6, rel=5e-6)  # printed to 6 digits


def test_verify_gumbel_rows(capsys):
    code, out = run(capsys, "verify", "--model", "weibull:tau=0.5", "--kmax", "5")
    assert code == 0
    rows = csv_rows(out)
    assert [r["k"] for r in rows] == [str(k) for k in range(6)]
    assert sum(r["best"] == "true" for r in rows) == 1


def test_pwl_file_model(tmp_path, capsys):
    path = tmp_path / "density.csv"
    path.write_text("x,f\n" + "".join(f"{k},{v}\n" for k, v in zip(PEAK_KNOTS, PEAK_VALUES)))
    model = parse_model(f"pwl:file={path}")
    assert model.family is Family.PIECEWISE_LINEAR
    code, out = run(capsys, "verify", "--model", f"pwl:file={path}")
    assert code == 0
    row = csv_rows(out)[0]
    assert float(row["measured_range"]) == pytest.approx(0.5, abs=1e-9)
    assert float(row["range_bound"]) == pytest.approx(0.5, rel=1e-12)


def test_pwl_missing_file(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--model", f"pwl:file={tmp_path / 'missing.csv'}"])
    assert exc.value.code == 2


@pytest.mark.parametrize("spec, family, mu, sigma", [
    ("gauss:sigma=1", Family.GAUSSIAN, 0.0, 1.0),
    ("gauss:sigma=1/3,mu=-0.5", Family.GAUSSIAN, -0.5, 1 / 3),
    ("weibull:tau=0.5", Family.GUMBEL, 0.0, 2 / math.log(10)),
    ("weibull:tau=1,gamma=100", Family.GUMBEL, 2.0, 1 / math.log(10)),
    ("uniform:width=2.3", Family.UNIFORM_WIDTH, 0.0, 1.0),
])
def test_parse_model(spec, family, mu, sigma):
    m = parse_model(spec)
    assert m.family is family
    assert m.mu == pytest.approx(mu, abs=1e-15)
    assert m.sigma == pytest.approx(sigma, rel=1e-15)


@pytest.mark.parametrize("spec", ["gauss", "gauss:mu=1", "gauss:sigma=1,nu=2", "cauchy:scale=1",
                                  "weibull:tau=-1", "uniform:width", "gauss:sigma=x",
                                  "gauss:sigma=1/0"])
def test_parse_model_errors(spec):
    with pytest.raises(ValueError):
        parse_model(spec)
