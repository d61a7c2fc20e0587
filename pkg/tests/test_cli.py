import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from blochspace.cli import main, to_json
from blochspace.separability import bell_state


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def enc(m):
    return [[[z.real, z.imag] for z in row] for row in np.asarray(m, dtype=complex)]


def test_check_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--n", "2", "--vector", "[0,0,0.5]")
    assert code == 0 and "INSIDE" in out
    code, out, _ = run(capsys, "check", "--n", "3", "--vector", "[0,0,0,0,0,0,0,1.1548]")
    assert code == 1 and "OUTSIDE" in out
    path = write_json(tmp_path, "v.json", [0.6, 0, 0.8])
    code, out, _ = run(capsys, "check", "--n", "2", "--vector", path, "--json")
    assert code == 2
    assert json.loads(out)["coeff"]["decision"] == "BOUNDARY"


def test_check_both_methods(capsys):
    code, out, _ = run(capsys, "check", "--n", "3", "--vector", "[0,0,0,0,0,0,0,0.3]", "--method", "both", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["agree"] is True
    assert payload["eigen"]["decision"] == "INSIDE"


def test_check_disagreement_exit_code(capsys):
    # a pure state sits on the boundary; a huge tolerance for one method only is not
    # possible, so force disagreement with a tolerance that straddles the two scales
    v = [0, 0, 0, 0, 0, 0, 0, -2 / math.sqrt(3) + 1e-4]
    code, out, _ = run(capsys, "check", "--n", "3", "--vector", json.dumps(v), "--method", "both", "--tol", "1e-5")
    assert code == 3 and "disagree" in out


def test_generators_json(capsys):
    code, out, _ = run(capsys, "generators", "--n", "2", "--json")
    mats = np.array(json.loads(out))
    assert code == 0
    np.testing.assert_array_equal(mats[..., 0] + 1j * mats[..., 1],
                                  [[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])


def test_generators_csv(capsys):
    code, out, _ = run(capsys, "generators", "--n", "3", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8 * 9
    assert rows[0] == {"index": "1", "row": "1", "col": "1", "re": "0", "im": "0"}


def test_structure_constants_csv(capsys):
    code, out, _ = run(capsys, "structure-constants", "--n", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    keyed = {(int(r["i"]), int(r["j"]), int(r["k"])): (float(r["f"]), float(r["g"])) for r in rows}
    assert keyed[(4, 5, 8)][0] == math.sqrt(3) / 2
    assert keyed[(1, 1, 8)] == (0.0, math.sqrt(3) / 3)
    assert list(keyed) == sorted(keyed)
    assert "0.57735026918962573" in out  # 17 significant digits


def test_to_rho_and_back(capsys, tmp_path):
    vpath = write_json(tmp_path, "v.json", [0.1, -0.2, 0.3])
    code, out, _ = run(capsys, "to-rho", "--n", "2", "--vector", vpath)
    assert code == 0
    mpath = tmp_path / "m.json"
    mpath.write_text(out)
    code, out, _ = run(capsys, "to-bloch", "--matrix", str(mpath))
    np.testing.assert_allclose(json.loads(out), [0.1, -0.2, 0.3], atol=1e-15)


def test_ppt(capsys, tmp_path):
    path = write_json(tmp_path, "bell.json", enc(bell_state()))
    code, out, _ = run(capsys, "ppt", "--dims", "2x2", "--matrix", path)
    assert code == 1 and "ENTANGLED" in out
    path = write_json(tmp_path, "mm.json", enc(np.eye(6) / 6))
    assert run(capsys, "ppt", "--dims", "2x3", "--matrix", path)[0] == 0
    path = write_json(tmp_path, "mm9.json", enc(np.eye(9) / 9))
    assert run(capsys, "ppt", "--dims", "3x3", "--matrix", path)[0] == 2


def test_section(capsys, tmp_path):
    out_path = tmp_path / "grid.csv"
    bnd = tmp_path / "bnd.csv"
    code, _, _ = run(capsys, "section", "--i", "3", "--j", "8", "--res", "21", "--out", str(out_path),
                     "--emit-boundary", str(bnd))
    assert code == 0
    rows = list(csv.DictReader(out_path.open()))
    assert len(rows) == 441 and set(rows[0]) == {"lambda_i", "lambda_j", "class"}
    assert {r["class"] for r in rows} == {"IN", "BALL_ONLY", "OUT"}
    curves = {r["curve"] for r in csv.DictReader(bnd.open())}
    assert curves == {"ball", "domain"}


def test_sample_deterministic(capsys):
    _, a, _ = run(capsys, "sample", "--n", "3", "--count", "5", "--kind", "pure", "--seed", "42")
    _, b, _ = run(capsys, "sample", "--n", "3", "--count", "5", "--kind", "pure", "--seed", "42")
    _, c, _ = run(capsys, "sample", "--n", "3", "--count", "5", "--kind", "pure", "--seed", "43")
    assert a == b != c
    vecs = np.array([json.loads(line) for line in a.splitlines()])
    np.testing.assert_allclose(np.linalg.norm(vecs, axis=1), 2 / math.sqrt(3), atol=1e-10)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "check", "--n", "2")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "check", "--n", "2", "--vector", "[0,0,0]", "--tol", "-1")[0] == 64
    code, _, err = run(capsys, "check", "--n", "3", "--vector", "[0,0,0]")
    assert code == 65 and "length 3" in err
    assert run(capsys, "check", "--n", "2", "--vector", str(tmp_path / "missing.json"))[0] == 74
    bad = write_json(tmp_path, "bad.json", enc([[0.5, 0.3], [0.1, 0.5]]))
    code, _, err = run(capsys, "to-bloch", "--matrix", bad)
    assert code == 65 and "Hermitian" in err


def test_env_tolerance(capsys, monkeypatch):
    v = "[0,0,0,0,0,0,0,-1.15]"
    assert run(capsys, "check", "--n", "3", "--vector", v)[0] == 0
    monkeypatch.setenv("BLOCH_TOL", "1e-3")
    assert run(capsys, "check", "--n", "3", "--vector", v)[0] == 2
    # flag wins over the environment
    assert run(capsys, "check", "--n", "3", "--vector", v, "--tol", "1e-9")[0] == 0


def test_to_json_formatting():
    assert to_json({"a": [0.1, 1.0], "b": None, "c": True}) == '{"a": [0.10000000000000001, 1], "b": null, "c": true}'


def test_module_entry_point_byte_identical():
    cmd = [sys.executable, "-m", "blochspace", "sample", "--n", "4", "--count", "3", "--kind", "mixed", "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and len(first.splitlines()) == 3
