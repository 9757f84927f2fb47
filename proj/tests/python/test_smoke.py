import json
import os
import subprocess
import sys

import pytest

MODULE_DIR = os.environ.get("LEVI6_MODULE_DIR")
if MODULE_DIR:
    sys.path.insert(0, MODULE_DIR)

_levi6 = pytest.importorskip("_levi6")

CHART = ["x", "y", "u", "v", "p", "q"]

CR_MANIFEST = {
    "pde": {"solved": ["v_x", "v_y"], "rhs": ["-u_y", "u_x"]},
    "points": [[0.1, -0.2, 0.3, 0.05, -0.15, 0.25]],
    "random": 3,
    "seed": 7,
}


def test_parse_evaluate():
    e = _levi6.parse("x^2 + sin(y)", CHART)
    import math

    val = _levi6.evaluate(e, [0.5, 0.25, 0, 0, 0, 0])
    assert abs(val - (0.25 + math.sin(0.25))) < 1e-12


def test_differentiate():
    e = _levi6.parse("x*y + u^3", CHART)
    de = _levi6.differentiate(e, CHART, "u")
    assert abs(_levi6.evaluate(de, [0, 0, 2, 0, 0, 0]) - 12.0) < 1e-12


def test_pfaffian():
    # e1^e2 + e3^e4
    assert abs(_levi6.pfaffian([1, 0, 0, 0, 0, 1]) - 1.0) < 1e-15
    assert abs(_levi6.pfaffian([3, 0, 0, 0, 0, 0])) < 1e-15


def test_classify():
    out = json.loads(_levi6.classify(json.dumps(CR_MANIFEST)))
    assert len(out) == 4
    assert all(c["kind"] == "elliptic" for c in out)
    assert all(abs(c["delta"] + 4.0) < 1e-12 for c in out)


def test_check_flat():
    assert _levi6.check_flat(json.dumps(CR_MANIFEST)) is True
    perturbed = dict(CR_MANIFEST)
    perturbed["pde"] = {"solved": ["v_x", "v_y"], "rhs": ["-u_y + u^2", "u_x"]}
    assert _levi6.check_flat(json.dumps(perturbed)) is False


def test_report_structure():
    rep = json.loads(_levi6.report(json.dumps(CR_MANIFEST)))
    assert rep["elliptic"]["flat"] is True
    assert len(rep["points"]) == 4


def test_errors_surface_as_python_exceptions():
    with pytest.raises(Exception):
        _levi6.parse("x +", CHART)
    with pytest.raises(Exception):
        _levi6.check_flat(json.dumps({"points": []}))


def test_cli_deterministic(tmp_path):
    cli = os.environ.get("LEVI6_CLI")
    if not cli:
        pytest.skip("LEVI6_CLI not set")
    manifest = tmp_path / "m.json"
    manifest.write_text(json.dumps(CR_MANIFEST))
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        r = subprocess.run([cli, "report", str(manifest), "--out", str(out)])
        assert r.returncode == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_cli_exit_codes(tmp_path):
    cli = os.environ.get("LEVI6_CLI")
    if not cli:
        pytest.skip("LEVI6_CLI not set")
    deg = tmp_path / "deg.json"
    deg.write_text(
        json.dumps(
            {
                "pde": {"solved": ["u_x", "u_y"], "rhs": ["0", "0"]},
                "points": [[0.1, -0.2, 0.3, 0.05, -0.15, 0.25]],
            }
        )
    )
    r = subprocess.run([cli, "classify", str(deg)], capture_output=True)
    assert r.returncode == 2
    r = subprocess.run([cli, "classify", str(tmp_path / "missing.json")],
                       capture_output=True)
    assert r.returncode == 1
