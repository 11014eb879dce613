import csv
import io
import json
import os
import subprocess
import sys

import pytest

from fraclap import cli


def run(args, capsys):
    code = cli.main(args)
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], [[float(x) if x else None for x in row] for row in rows[1:]]


def test_profile_alpha_one_methods_agree(capsys):
    code, out, _ = run(["profile", "--alpha", "1", "--sigma", "1", "--q", "1", "--L", "1",
                        "--methods", "integer_closed,full_quadrature", "--points", "40"],
                       capsys)
    assert code == 0
    header, rows = table(out)
    assert header == ["r", "integer_closed", "full_quadrature", "err_full_quadrature"]
    assert len(rows) == 40
    assert all(abs(row[1] - row[2]) <= 1e-6 for row in rows)


def test_profile_default_grid(capsys):
    code, out, _ = run(["profile", "--methods", "integer_closed"], capsys)
    _, rows = table(out)
    assert code == 0 and len(rows) == 200
    assert rows[0][0] == 0.05 and rows[-1][0] == 20.0


def test_seventeen_significant_digits(capsys):
    _, out, _ = run(["profile", "--methods", "integer_closed", "--points", "3"], capsys)
    value = out.splitlines()[1].split(",")[1]
    assert float(value) == float(f"{float(value):.17g}")
    assert len(value.replace(".", "").lstrip("0")) == 17


def test_zero_sigma(capsys):
    code, out, _ = run(["profile", "--sigma", "0", "--points", "4", "--methods",
                        "integer_closed,full_quadrature,point_asymptotic"], capsys)
    _, rows = table(out)
    assert code == 0
    assert all(row[1] == 0 and row[2] == 0 and row[4] == 0 for row in rows)


def test_heavier_tail_for_smaller_alpha(capsys):
    args = ["profile", "--methods", "point_asymptotic", "--points", "5"]
    _, low, _ = run(args + ["--alpha", "0.85"], capsys)
    _, high, _ = run(args + ["--alpha", "0.995"], capsys)
    assert table(low)[1][-1][1] > table(high)[1][-1][1]


def test_compare_alpha_one(capsys):
    code, out, err = run(["compare", "--methods", "full_quadrature,integer_closed",
                          "--points", "30"], capsys)
    header, rows = table(out)
    assert code == 0
    assert header == ["r", "value_a", "value_b", "abs_diff", "rel_diff"]
    assert max(row[3] for row in rows) <= 1e-6
    assert "max abs_diff" in err


def test_compare_method_with_itself(capsys):
    _, out, _ = run(["compare", "--methods", "point_asymptotic,point_asymptotic",
                     "--points", "5", "--alpha", "0.9"], capsys)
    assert all(row[3] == 0 and row[4] == 0 for row in table(out)[1])


def test_compare_ring_fractional(capsys):
    code, out, _ = run(["compare", "--alpha", str(8 / 9), "--methods", "full_quadrature,ring",
                        "--rmin", "0.5", "--rmax", "1", "--points", "2"], capsys)
    rows = table(out)[1]
    assert code == 0
    assert rows[1][3] <= 1e-8   # r = L
    assert rows[0][4] >= 1e-3   # r = L/2


def test_json_output(capsys):
    code, out, _ = run(["profile", "--methods", "integer_closed", "--points", "3",
                        "--format", "json", "--alpha", "1"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"config", "columns", "rows"}
    assert doc["config"]["params"]["alpha"] == 1.0
    assert doc["columns"] == ["r", "integer_closed"]
    assert len(doc["rows"]) == 3


def test_asymptote(capsys):
    code, out, err = run(["asymptote", "--alpha", "0.995", "--rmin", "20", "--rmax", "200",
                          "--points", "6"], capsys)
    header, rows = table(out)
    assert code == 0
    assert header[-1] == "ratio"
    assert 0.99 < rows[-1][-1] < 1.01
    assert "r >=" in err


def test_output_file(tmp_path, capsys):
    target = tmp_path / "p.csv"
    code, out, _ = run(["profile", "--methods", "integer_closed", "--points", "3",
                        "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().startswith("r,integer_closed\n")


@pytest.mark.parametrize("args", [
    ["profile", "--bogus"],
    ["profile", "--points", "1"],
    ["profile", "--rmin", "2", "--rmax", "1"],
    ["profile", "--alpha", "1.5"],
    ["profile", "--methods", "nonsense"],
    ["compare", "--methods", "ring"],
    ["explode"],
    ["profile", "--q", "abc"],
])
def test_bad_flags_exit_64(args, capsys):
    code, out, err = run(args, capsys)
    assert code == 64
    assert out == "" and err


def test_evaluation_error_exit_2(capsys):
    # the point solution is singular at the origin; its integrand overflows at r = 1e-300
    code, out, err = run(["profile", "--methods", "point_asymptotic", "--alpha", "0.9",
                          "--rmin", "1e-300", "--rmax", "1", "--points", "3"], capsys)
    assert code == 2
    assert out == ""
    assert "point_asymptotic" in err and "r=1e-300" in err


def test_calibration_failure_exit_2(capsys):
    code, _, err = run(["profile", "--methods", "ring", "--alpha", "0.9", "--q", "1e8",
                        "--points", "2"], capsys)
    assert code == 2 and "calibration" in err


def test_selftest_passes_and_is_deterministic(capsys):
    code, first, _ = run(["selftest"], capsys)
    _, second, _ = run(["selftest"], capsys)
    assert code == 0
    assert first == second
    assert "FAIL" not in first


def test_selftest_impossible_tolerance(capsys):
    code, out, _ = run(["selftest", "--tol", "1e-30"], capsys)
    assert code == 1
    assert "FAIL wronskian_ik" in out


def test_deterministic_across_thread_counts():
    args = [sys.executable, "-m", "fraclap", "profile", "--alpha", "0.9", "--points", "16",
            "--methods", "full_quadrature,point_asymptotic"]
    outs = []
    for threads in ("1", "4"):
        env = dict(os.environ, FRACLAP_THREADS=threads)
        outs.append(subprocess.run(args, env=env, capture_output=True, check=True).stdout)
    assert outs[0] == outs[1]
