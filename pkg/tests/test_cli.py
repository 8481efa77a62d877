import json
import subprocess
import sys
from math import sqrt

import pytest

from curvtopo.cli import main


@pytest.fixture
def descriptors(tmp_path):
    files = {
        "circle": {"type": "circle", "circumference": 1.0, "points": [0.0, 1 / 3, 2 / 3]},
        "equilateral": {"type": "euclidean", "points": [[0, 0], [1, 0], [0.5, sqrt(3) / 2]]},
        "bad": {"type": "finite", "matrix": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]},
        "finite": {"type": "finite", "matrix": [[0, 3, 4], [3, 0, 5], [4, 5, 0]]},
    }
    out = {}
    for name, obj in files.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(obj))
        out[name] = str(path)
    return out


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_persist_circle(descriptors, tmp_path, capsys):
    out = tmp_path / "bars.csv"
    argv = ["persist", descriptors["circle"], "--flavor", "cech", "--schedule", "uniform", "--mode", "ambient", "--output", str(out)]
    code, stdout, _ = run(argv, capsys)
    assert code == 0
    assert "1,0.1666666666666666" in out.read_text()
    assert any(line.startswith("1,0.1666") and line.endswith(",0.3333333333333333") for line in out.read_text().splitlines())
    assert json.loads(stdout)["simplices"] == 7


def test_rho(descriptors, capsys):
    code, stdout, _ = run(["rho", descriptors["equilateral"], "--triple", "0,1,2"], capsys)
    assert code == 0
    assert json.loads(stdout)["rho"] == pytest.approx(1.1547005, abs=1e-7)


def test_validate_violation(descriptors, capsys):
    code, stdout, stderr = run(["validate", descriptors["bad"]], capsys)
    assert code == 1
    assert json.loads(stdout)["violations"] == [{"kind": "triangle", "pair": [0, 2], "via": 1}]
    assert stderr.startswith("InvalidSpace")


def test_validate_ok(descriptors, capsys):
    assert run(["validate", descriptors["finite"]], capsys)[0] == 0


def test_usage_errors(descriptors, capsys):
    assert run(["rho", descriptors["equilateral"]], capsys)[0] == 2
    assert run(["persist", descriptors["circle"], "--flavor", "alpha"], capsys)[0] == 2
    assert run(["extremal", descriptors["finite"], "--start", "nope"], capsys)[0] == 2
    assert run(["persist", descriptors["circle"], "--dim-cap", "9"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_domain_error_names_class(descriptors, capsys):
    code, _, stderr = run(["extremal", descriptors["finite"], "--start", "constant:1"], capsys)
    assert code == 1
    assert stderr.startswith("NotAdmissible")
    code, _, stderr = run(["rho", descriptors["finite"], "--triple", "0,1,2", "--mode", "ambient"], capsys)
    assert code == 1 and stderr.startswith("UnsupportedMode")
    code, _, stderr = run(["rho", descriptors["finite"], "--triple", "0,1,7"], capsys)
    assert code == 1 and stderr.startswith("IndexOutOfRange")


def test_missing_file(capsys, tmp_path):
    code, _, stderr = run(["rho", str(tmp_path / "nope.json"), "--triple", "0,1,2"], capsys)
    assert code == 1 and stderr.startswith("IoError")


def test_extremal(descriptors, capsys):
    code, stdout, _ = run(["extremal", descriptors["finite"], "--start", "constant:5"], capsys)
    assert code == 0
    assert json.loads(stdout) == {"points": [0, 1, 2], "radii": [0.0, 3.0, 4.0], "extremal": True}


def test_inclusions(descriptors, capsys):
    assert run(["inclusions", descriptors["circle"], "--mu", "2.0000001"], capsys)[0] == 0
    code, stdout, _ = run(["inclusions", descriptors["circle"], "--mu", "1.5"], capsys)
    assert code == 1
    assert not json.loads(stdout)["ok"]


def test_expansion(descriptors, capsys):
    code, stdout, _ = run(["expansion", descriptors["circle"], "--arity", "3", "--tuples", "10"], capsys)
    assert code == 0
    assert json.loads(stdout)["mu_hat"] == pytest.approx(2.0)


def test_profile_outputs(descriptors, tmp_path, capsys):
    csv_path, svg_path = tmp_path / "p.csv", tmp_path / "p.svg"
    assert run(["profile", descriptors["equilateral"], "--output", str(csv_path)], capsys)[0] == 0
    assert csv_path.read_text().startswith("i,j,k,d12,d13,d23,r,lambda,rho,attained\n")
    assert run(["profile", descriptors["equilateral"], "--output", str(svg_path)], capsys)[0] == 0
    assert svg_path.read_text().startswith("<svg")


def test_weighted_persist(descriptors, capsys):
    argv = ["persist", descriptors["equilateral"], "--schedule", "weighted", "--weights", "0.5,0.5,0.5"]
    code, stdout, _ = run(argv, capsys)
    assert code == 0
    bars = json.loads(stdout)["bars"]
    assert {"dim": 1, "birth": pytest.approx(1.0), "death": pytest.approx(2 / sqrt(3))} in bars


def test_deterministic_output(descriptors, tmp_path, capsys):
    outs = []
    for n in range(2):
        path = tmp_path / f"p{n}.csv"
        run(["profile", descriptors["circle"], "--seed", "3", "--output", str(path)], capsys)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("command", ["validate", "rho", "profile", "persist", "expansion", "extremal", "inclusions"])
def test_help_names_defaults(command, capsys):
    code, stdout, _ = run([command, "--help"], capsys)
    assert code == 0
    assert "(default:" in " ".join(stdout.split())


def test_module_entry_point(descriptors):
    proc = subprocess.run(
        [sys.executable, "-m", "curvtopo", "rho", descriptors["equilateral"], "--triple", "0,1,2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rho"] == pytest.approx(2 / sqrt(3))
