import csv
import io
import json
import math
import subprocess
import sys

import pytest

from qgue import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_moment_examples(capsys):
    assert run(capsys, "moments", "--kind", "qgue", "--N", "2", "--p", "1", "--format", "text")[1] == "2 + q + q^2\n"
    assert run(capsys, "moments", "--kind", "gue", "--N", "4", "--p", "1")[1] == "16\n"
    assert run(capsys, "moments", "--kind", "qgue", "--N", "1", "--p", "1", "--at-q", "1/2")[1] == "1\n"


def test_moment_csv_has_provenance(capsys):
    code, out, _ = run(capsys, "moments", "--N", "1-3", "--p", "0,2", "--oracle", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kind", "N", "p", "provenance", "value"]
    assert all(r[3] == "alternating+oracle+positive" for r in rows[1:])
    assert len(rows) == 7
    assert out.endswith("\r\n")


def test_exact_rational_q(capsys):
    _, out, _ = run(capsys, "moments", "--N", "2", "--p", "1", "--at-q", "1/2")
    assert out == "11/4\n"


def test_json_meta(capsys):
    _, out, _ = run(capsys, "genus", "--max-p", "3", "--format", "json")
    body = json.loads(out)
    assert body["meta"]["command"] == "genus"
    assert "version" in body["meta"]
    assert {"g": 1, "p": 3, "value": "10"} in body["rows"]


@pytest.mark.parametrize("argv", [
    ("moments", "--N", "1-4", "--p", "0-3", "--format", "csv"),
    ("asym", "--p", "1,2", "--lam", "0.3,log2", "--N", "10,20", "--format", "json"),
    ("density", "--lam", "2", "--points", "21", "--format", "csv"),
    ("verify", "--suite", "exact", "--max-p", "2", "--max-j", "2", "--max-N", "3", "--format", "csv"),
])
def test_output_is_deterministic(capsys, argv):
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    if argv[0] == "verify":
        # wall-clock column differs between runs; compare everything else
        strip = lambda t: [r[:3] + r[4:] for r in csv.reader(io.StringIO(t))]  # noqa: E731
        assert strip(a) == strip(b)
    else:
        assert a == b


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "exact", "--max-p", "1", "--max-j", "1")
    assert code == 0
    assert "(1,1):3" in out
    assert out.strip().endswith("overall: pass")


def test_injected_fault_is_caught(capsys):
    code, out, err = run(capsys, "verify", "--suite", "exact", "--max-p", "1", "--max-j", "1", "--inject-fault")
    assert code == 1
    assert "overall: FAIL" in out
    assert "first failure: triple_identity p=1 j=1" in err
    assert "positive=2 + q + q^2" in err and "oracle=1 + q + q^2" in err


def test_asym_rows(capsys):
    _, out, _ = run(capsys, "asym", "--p", "3", "--lam", "2", "--N", "10,20,40", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    gaps = [abs(float(r["residual_minus_M1"])) for r in rows]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] / abs(float(rows[0]["M1"])) < 5e-2
    _, out, _ = run(capsys, "asym", "--p", "1", "--lam", "1", "--N", "1000", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["scaled"]) / 1000 == pytest.approx(0.399576, abs=1e-3)
    _, out, _ = run(capsys, "asym", "--p", "1-3", "--lam", "0", "--N", "50", "--format", "csv")
    for row in csv.DictReader(io.StringIO(out)):
        assert float(row["scaled"]) == float(row["M0"]) == float(row["M1"]) == 0.0


def test_density_profiles(capsys):
    _, out, _ = run(capsys, "density", "--lam", "0.3", "--points", "199", "--format", "csv")
    rows = [(float(r["x"]), float(r["value"])) for r in csv.DictReader(io.StringIO(out))]
    b = 2 * math.sqrt((1 - math.exp(-0.3)) * math.exp(-0.3))
    assert all(v == 0.0 for x, v in rows if abs(x) > b)
    _, out, _ = run(capsys, "density", "--lam", "2", "--points", "199", "--format", "csv")
    b2 = 2 * math.sqrt((1 - math.exp(-2)) * math.exp(-2))
    for r in csv.DictReader(io.StringIO(out)):
        x, v = float(r["x"]), float(r["value"])
        if b2 < abs(x) < 1:
            assert v == pytest.approx(1 / (2 * abs(x)), rel=1e-14)


def test_density_svg_markers(capsys, tmp_path):
    target = tmp_path / "rho.svg"
    code, out, _ = run(capsys, "density", "--lam", "1", "--order", "1", "--points", "41", "--format", "svg", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("<svg") and text.count("stroke-dasharray") >= 4


def test_lattice_summary(capsys):
    _, out, _ = run(capsys, "lattice", "--N", "4", "--q", "0.5")
    norm = next(line for line in out.splitlines() if line.startswith("normalization"))
    assert float(norm.split()[1]) == pytest.approx(4.0, abs=1e-10)
    _, out, _ = run(capsys, "lattice", "--N", "2", "--q", "0.5", "--p", "1")
    line = next(line for line in out.splitlines() if line.startswith("moment p=1"))
    fields = dict(kv.split("=") for kv in line.split()[1:])
    assert float(fields["jackson"]) == pytest.approx(1.375, abs=1e-10)
    assert float(fields["symbolic"]) == 1.375


def test_lattice_single_level_proportional_to_weight(capsys):
    _, out, err = run(capsys, "lattice", "--N", "1", "--q", "0.5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    ratios = {round(float(r["density"]) / float(r["weight"]), 12) for r in rows}
    assert ratios == {2.0}
    assert err.startswith("normalization")


@pytest.mark.parametrize("argv,code", [
    (("moments", "--N", "0", "--p", "1"), 2),
    (("moments", "--N", "2", "--p", "1", "--at-q", "3/2"), 2),
    (("moments", "--N", "4-2", "--p", "1"), 2),
    (("lattice", "--N", "2", "--q", "1.5"), 2),
    (("density", "--lam", "0"), 2),
    (("moments", "--N", "1-20", "--p", "8", "--oracle", "--budget", "10"), 3),
    (("verify", "--suite", "exact", "--max-p", "5", "--max-j", "5", "--budget", "1000"), 3),
    (("moments", "--N", "2", "--p", "1", "--format", "svg"), 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_argparse_errors_are_configuration_errors(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["moments", "--N", "2", "--p", "1", "--budget", "-3"])
    assert info.value.code == 2


def test_tolerance_override(capsys):
    code, out, _ = run(capsys, "moments", "--N", "2", "--p", "1", "--at-q", "0.5", "--tol", "1e-3", "--format", "json")
    assert code == 0
    assert json.loads(out)["meta"]["config"]["tol"] == "0.001"


def test_range_parsing():
    assert cli.parse_int_range("1-4") == [1, 2, 3, 4]
    assert cli.parse_int_range("5,1,1-2") == [1, 2, 5]
    assert cli.parse_float("log2") == math.log(2)
    assert cli.parse_float("1/4") == 0.25
    with pytest.raises(cli.ConfigError):
        cli.parse_int_range("a-b")


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "qgue.cli", "genus", "--max-p", "2", "--format", "csv"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[0] == "g,p,value"
