import json
import re

import pytest

from dyndeg.cli import main
from dyndeg.scenarios import SCENARIOS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_example3_scenario(capsys):
    code, out, _ = run(capsys, "scenario", "example3")
    assert code == 2
    assert "log-concavity: FAILS (9 < 10), expected" in out
    for p, lam in ((0, 2), (1, 3), (2, 5)):
        assert f"p={p}: lambda = {lam} " in out


def test_remark_scenario_reports_expected_failure(capsys):
    code, out, _ = run(capsys, "scenario", "remark1pt6")
    assert code == 2
    assert "weak product formula: FAILS (25 < 40), expected" in out


@pytest.mark.parametrize("name", ["remark1pt7", "thm65-reverse", "product-p2xp1", "weak-sharpness"])
def test_holding_scenarios_exit_zero(capsys, name):
    code, out, _ = run(capsys, "scenario", name)
    assert code == 0
    assert "FAILS" not in out


def test_unknown_scenario(capsys):
    code, _, err = run(capsys, "scenario", "nope")
    assert code == 1 and "unknown scenario" in err


def test_diagonal_degrees_all_ones(tmp_path, capsys):
    f = write(tmp_path, "d.scn", "corr D = diag(P2)\ncmd degrees D p=0..2 n=4\n")
    code, out, _ = run(capsys, f, "--format", "records")
    assert code == 0
    values = [line for line in out.splitlines() if line.startswith("kind=degree ")]
    assert len(values) == 12 and all(v.endswith(" value=1") for v in values)


def test_no_decimals_without_approx(capsys):
    _, out, _ = run(capsys, "scenario", "all")
    assert not re.search(r"\d\.\d", out)
    _, approx, _ = run(capsys, "scenario", "example3", "--approx")
    assert re.search(r"~ \d+\.\d", approx)


@pytest.mark.parametrize("fmt", ["table", "csv", "records"])
def test_output_is_deterministic(capsys, fmt):
    a = run(capsys, "scenario", "all", "--format", fmt)
    b = run(capsys, "scenario", "all", "--format", fmt)
    assert a == b


def test_records_field_order_is_stable(capsys):
    _, out, _ = run(capsys, "scenario", "product-p2xp1", "--format", "records")
    orders = {}
    for line in out.splitlines():
        keys = tuple(re.findall(r'(\w+)=(?:"[^"]*"|\S*)', line))
        check = re.search(r"check=(\S+)", line)
        orders.setdefault(line.split()[0] + (check.group(1) if check else ""), set()).add(keys)
    assert orders and all(len(v) == 1 for v in orders.values())


def test_csv_rows_have_constant_width_per_kind(capsys):
    import csv
    import io
    _, out, _ = run(capsys, "scenario", "example3", "--format", "csv")
    widths = {}
    for row in csv.reader(io.StringIO(out)):
        if row:
            key = row[0] + (":" + row[1] if row[0] in ("check", "check_row") else "")
            widths.setdefault(key, set()).add(len(row))
    assert all(len(w) == 1 for w in widths.values())


def test_parse_error_goes_to_stderr(tmp_path, capsys):
    f = write(tmp_path, "bad.scn", "corr F = diag(P2)\ncorr G = power(P2,\n")
    code, out, err = run(capsys, f)
    assert code == 1 and out == ""
    assert "line 2" in err


def test_runtime_error_names_the_command(tmp_path, capsys):
    f = write(tmp_path, "bad.scn", "corr F = diag(P2)\ncmd degrees F n=2\ncmd verify product_formula F\n")
    code, out, err = run(capsys, f)
    assert code == 1
    assert "error in `cmd verify product_formula F`" in err
    assert "deg_p(F^n)" in out  # earlier commands still ran


def test_missing_file(capsys):
    code, _, err = run(capsys, "/nonexistent/scene.scn")
    assert code == 1 and "error" in err


def test_expectation_in_scene(tmp_path, capsys):
    f = write(tmp_path, "e.scn", "corr F = power(P2,2) + diag(P2)\ncmd verify log_concavity F expect=fails\n")
    code, out, _ = run(capsys, f)
    assert code == 2 and "expected" in out
    f = write(tmp_path, "e2.scn", "corr F = power(P2,2) + diag(P2)\ncmd verify log_concavity F\n")
    assert run(capsys, f)[0] == 1


def test_declared_atom_and_space(tmp_path, capsys):
    write(tmp_path, "b.json", json.dumps({"name": "b", "space": "P3", "matrices": [[[1]], [[3]], [[3]], [[1]]],
                                          "reverse": {"name": "rb"}, "birational": True}))
    write(tmp_path, "bl.json", json.dumps({
        "name": "BlP2", "dim": 2, "labels": [["1"], ["H", "E"], ["pt"]],
        "products": [["H", "H", {"pt": 1}], ["H", "E", {"pt": 0}], ["E", "E", {"pt": -1}]],
        "polarization": [2, -1]}))
    f = write(tmp_path, "s.scn", "corr B = declared(b.json)\nspace Y = declared bl.json\ncorr DY = diag(Y)\n"
                                 "cmd degrees DY n=2\ncmd verify triangle B rev(B)\n")
    code, out, _ = run(capsys, f)
    assert code == 0
    assert "triangle inequality: HOLDS (strict at p = 1, 2)" in out
    assert "10/3" in out
    # (2H - E)^2 = 4 - 1
    assert re.search(r"\n\s+1\s+3\s+3\s+3\n", out)


def test_every_scenario_runs(capsys):
    for name in SCENARIOS:
        code, out, err = run(capsys, "scenario", name)
        assert code in (0, 2), (name, err)
        assert out.strip()


@pytest.mark.parametrize("name,expected", [("example3.scn", 2), ("product.scn", 0), ("triangle.scn", 0)])
def test_demo_scenes(capsys, name, expected):
    from pathlib import Path
    path = Path(__file__).resolve().parent.parent / "demos" / "scenes" / name
    code, out, err = run(capsys, str(path))
    assert code == expected, err
