import json
import subprocess
import sys

import numpy as np
import pytest

from spin7cells import charts, groups, verify
from spin7cells.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_matrix(path, M):
    path.write_text(groups.format_matrix(M))
    return str(path)


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "all", "--seed", "42")
    assert code == 0
    assert "\tfail\t" not in out
    assert out.rstrip().splitlines()[-1].endswith("0 fail, 0 skip")


def test_verify_cohomology_space(capsys):
    code, out, _ = run(capsys, "verify", "cohomology", "--space", "spin7")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:-1]]
    cup = [r for r in rows if r[0] == "cohomology.cup_length[spin7]"]
    assert len(cup) == 1 and cup[0][2] == "pass" and cup[0][3] == "5"


def test_verify_reduced_samples(capsys):
    code, out, _ = run(capsys, "verify", "charts", "--samples", "10")
    assert code == 0
    sample_col = {line.split("\t")[5] for line in out.splitlines()[1:-1]}
    assert sample_col <= {"0", "10"}


def test_report_schema(capsys):
    _, out, _ = run(capsys, "verify", "cayley")
    lines = out.splitlines()
    assert lines[0].split("\t") == list(verify.COLUMNS)
    ids = [line.split("\t")[0] for line in lines[1:-1]]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    assert all(len(line.split("\t")) == len(verify.COLUMNS) for line in lines[1:-1])


def test_every_check_appears_once(capsys):
    _, out, _ = run(capsys, "verify", "cohomology", "--format", "data")
    ids = [r["check"] for r in json.loads(out)["checks"]]
    assert len(ids) == len(set(ids)) == len(verify.select("cohomology"))


def test_data_format(capsys):
    code, out, _ = run(capsys, "verify", "groups", "--format", "data", "--samples", "5")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["fail"] == 0
    assert set(data["checks"][0]) == set(verify.COLUMNS)


def test_determinism(capsys):
    first = run(capsys, "verify", "groups", "--seed", "7", "--samples", "5")[1]
    second = run(capsys, "verify", "groups", "--seed", "7", "--samples", "5")[1]
    assert first == second


def test_failing_check_exits_1(capsys):
    # an absurd tolerance makes the floating-point identity checks fail
    code, out, _ = run(capsys, "verify", "cayley", "--tol", "-1")
    assert code == 1
    assert "\tfail\t" in out


@pytest.mark.parametrize("argv", [
    ["verify", "nonsense"],
    ["verify", "cohomology", "--space", "mars"],
    ["verify", "charts", "--samples", "0"],
    ["census", "so9"],
    ["cat", "so9"],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_factorize_identity(capsys, tmp_path):
    code, out, _ = run(capsys, "factorize", write_matrix(tmp_path / "i.txt", np.eye(8)))
    assert code == 0
    assert "label\te^0" in out
    assert "residual\t0.000e+00" in out


def test_factorize_phi6(capsys, tmp_path):
    v = [0.2, 0.1, 0.3, -0.2, 0.4, 0.1]
    path = write_matrix(tmp_path / "g.txt", charts.char_map(6, v))
    code, out, _ = run(capsys, "factorize", path, "--format", "data")
    data = json.loads(out)
    assert code == 0
    assert data["generators"] == [6]
    assert np.allclose(data["params"]["phi6"], v, atol=1e-9)
    assert data["residual"] <= 1e-12


def test_factorize_rejects_reflection(capsys, tmp_path):
    path = write_matrix(tmp_path / "r.txt", np.diag([1.0] * 7 + [-1.0]))
    code, _, err = run(capsys, "factorize", path)
    assert code == 3
    assert "SO(8)" in err


def test_factorize_rejects_bad_file(capsys, tmp_path):
    (tmp_path / "bad.txt").write_text("1 2 3\n")
    assert run(capsys, "factorize", str(tmp_path / "bad.txt"))[0] == 3
    assert run(capsys, "factorize", str(tmp_path / "missing.txt"))[0] == 3


def test_census(capsys):
    code, out, _ = run(capsys, "census", "spin7")
    assert code == 0
    assert out.count("cell\t") == 16
    assert "count\t16" in out
    _, out, _ = run(capsys, "census", "su2", "--format", "data")
    assert [c["dim"] for c in json.loads(out)["cells"]] == [0, 3]


def test_cat(capsys):
    code, out, _ = run(capsys, "cat", "spin8")
    assert code == 0
    assert out.splitlines()[0] == "spin8\t(6, 6, determined)"
    _, out, _ = run(capsys, "cat", "g2", "--format", "data")
    assert json.loads(out)["verdict"] == "open"


def test_chart_output_is_matrix_file(capsys):
    code, out, _ = run(capsys, "chart", "7", "0.1", "0.2", "0.3", "0.4", "0.5", "0.1", "0.2")
    assert code == 0
    assert groups.is_spin7(groups.parse_matrix(out))


def test_module_entry_point(tmp_path):
    path = write_matrix(tmp_path / "i.txt", -np.eye(8))
    proc = subprocess.run([sys.executable, "-m", "spin7cells", "factorize", path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "label\te^15" in proc.stdout
