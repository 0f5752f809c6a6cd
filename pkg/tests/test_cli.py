import json
import subprocess
import sys

import numpy as np
import pytest

from cmvinverse import cli
from cmvinverse.documents import DocumentError, digest, dump_data, parse_document
from cmvinverse.errors import RootOffCircle


def run_cli(tmp_path, argv, doc=None):
    if doc is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(doc))
        argv = argv + ["--input", str(path)]
    out = tmp_path / "out.json"
    code = cli.main(argv + ["--output", str(out)])
    report = json.loads(out.read_text())
    assert report["exit_code"] == code
    return report, code


def verblunsky(alpha, beta):
    return {"kind": "verblunsky", "n": len(alpha) + 1, "alpha": alpha, "beta": beta}


def cplx(report_value):
    return complex(*report_value)


def test_build(tmp_path):
    report, code = run_cli(tmp_path, ["build"], verblunsky([[0, 0]], [1, 0]))
    assert code == 0 and report["status"] == "ok"
    np.testing.assert_array_equal([[cplx(c) for c in row] for row in report["outputs"]["matrix"]], [[0, 1], [1, 0]])
    defect = [r for r in report["verification"] if r["name"] == "unitarity_defect"][0]
    assert defect["value"] < 1e-15 and defect["pass"]

    report, code = run_cli(tmp_path, ["build"], verblunsky([], [0, 1]))
    assert cplx(report["outputs"]["matrix"][0][0]) == -1j


def test_build_invalid_alpha(tmp_path):
    report, code = run_cli(tmp_path, ["build"], verblunsky([[1, 0]], [1, 0]))
    assert code == 1
    assert report["error"]["type"] == "AlphaOutOfDisk"


def test_spectrum(tmp_path):
    report, code = run_cli(tmp_path, ["spectrum"], verblunsky([[0, 0]] * 3, [1, 0]))
    assert code == 0
    angles = [p["angle"] for p in report["outputs"]["points"]]
    np.testing.assert_allclose(angles, np.arange(4) * np.pi / 2, atol=1e-12)
    np.testing.assert_allclose(report["outputs"]["masses"], 0.25, atol=1e-12)
    assert report["verification"] and all(r["pass"] for r in report["verification"])

    beta = np.exp(0.8j)
    report, _ = run_cli(tmp_path, ["spectrum"], verblunsky([], [beta.real, beta.imag]))
    assert report["outputs"]["points"][0]["angle"] == pytest.approx(2 * np.pi - 0.8)


def test_measure_and_weyl(tmp_path):
    doc = verblunsky([[0.3, 0.1], [-0.2, 0.5]], [0, 1])
    report, code = run_cli(tmp_path, ["measure"], doc)
    assert code == 0
    kind, m = parse_document(report["outputs"]["measure"])
    assert kind == "measure" and m.n == 3
    report, code = run_cli(tmp_path, ["weyl", "--at", "[0.5, 1.5]"], doc)
    assert code == 0 and report["verification"][0]["pass"]


def test_truncate(tmp_path):
    report, code = run_cli(tmp_path, ["truncate", "--beta2", "[0, 1]"], verblunsky([[0, 0]], [1, 0]))
    assert code == 0
    out = report["outputs"]
    assert out["classification"] == "regular"
    assert cplx(out["B"]) == pytest.approx(1j)
    report, _ = run_cli(tmp_path, ["truncate", "--beta2", "[1, 0]"], verblunsky([[0, 0], [0, 0]], [1, 0]))
    assert report["outputs"]["classification"] == "singular"
    assert report["outputs"]["shared_point"]["angle"] == pytest.approx(0, abs=1e-12)


def test_invert_measure(tmp_path):
    doc = {"kind": "measure", "points": [{"angle": k * np.pi / 2} for k in range(4)], "masses": [0.25] * 4}
    report, code = run_cli(tmp_path, ["invert", "measure"], doc)
    assert code == 0
    data = report["outputs"]["data"]
    np.testing.assert_allclose([cplx(a) for a in data["alpha"]], 0, atol=1e-12)
    assert cplx(data["beta"]) == pytest.approx(1)


def test_invert_two_spectra(tmp_path):
    doc = {"kind": "spectrum_pair", "s1": [[1, 0], [-1, 0]], "s2": [[0, 1], [0, -1]]}
    report, code = run_cli(tmp_path, ["invert", "two-spectra"], doc)
    assert code == 0
    out = report["outputs"]
    assert abs(cplx(out["data1"]["alpha"][0])) < 1e-12
    assert cplx(out["data1"]["beta"]) == pytest.approx(1)
    assert cplx(out["data2"]["beta"]) == pytest.approx(-1)


def test_invert_two_spectra_not_interlacing(tmp_path):
    doc = {"kind": "spectrum_pair", "s1": [{"angle": 0}, {"angle": np.pi}],
           "s2": [{"angle": 0.7}, {"angle": 2.3}]}
    report, code = run_cli(tmp_path, ["invert", "two-spectra"], doc)
    assert code == 1 and report["error"]["type"] == "NotInterlacing"


def test_invert_truncation(tmp_path):
    cube = [{"angle": 2 * np.pi * k / 3} for k in range(3)]
    doc = {"kind": "spectrum_pair", "s1": cube, "s2": [[1, 0], [-1, 0]]}
    report, code = run_cli(tmp_path, ["invert", "truncation", "--param-t", "0.6667"], doc)
    assert code == 0 and report["outputs"]["case"] == "singular"
    out = report["outputs"]
    assert max(abs(cplx(a)) for a in out["data1"]["alpha"]) < 1e-3
    assert abs(cplx(out["data1"]["beta"]) - 1) < 1e-3
    assert abs(cplx(out["data2"]["beta"]) - 1) < 1e-3
    report, code = run_cli(tmp_path, ["invert", "truncation"], doc)
    assert code == 0 and report["outputs"]["case"] == "singular"

    doc = {"kind": "spectrum_pair", "s1": [[1, 0], [-1, 0]], "s2": [[0, -1]]}
    report, code = run_cli(tmp_path, ["invert", "truncation", "--zeta", str(np.pi / 2)], doc)
    assert code == 0 and report["outputs"]["case"] == "regular"
    assert cplx(report["outputs"]["data2"]["beta"]) == pytest.approx(1j)
    # without a pivot the midpoint of the admissible arc is used
    report, code = run_cli(tmp_path, ["invert", "truncation"], doc)
    assert code == 0 and report["outputs"]["case"] == "regular"


@pytest.mark.parametrize("mode", ["measure", "two-spectra", "trunc-regular", "trunc-singular"])
def test_roundtrip_modes(tmp_path, mode):
    report, code = run_cli(tmp_path, ["roundtrip", "--mode", mode, "--n", "5", "--trials", "10"])
    assert code == 0, report["verification"]
    assert report["outputs"]["summary"]["trials"] == 10
    assert [r["trial"] for r in report["outputs"]["rows"]] == list(range(10))


def test_roundtrip_is_deterministic(tmp_path):
    argv = ["roundtrip", "--mode", "two-spectra", "--n", "6", "--trials", "5", "--seed", "3"]
    a, _ = run_cli(tmp_path, argv)
    b, _ = run_cli(tmp_path, argv)
    a.pop("wall_time")
    b.pop("wall_time")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_examples(tmp_path):
    report, code = run_cli(tmp_path, ["example", "roots-of-unity", "--n", "6"])
    assert code == 0
    report, code = run_cli(tmp_path, ["example", "rotated", "--n", "5", "--theta", "1.0"])
    assert code == 0
    assert report["outputs"]["points"][0]["angle"] == pytest.approx(0.2)


def test_failed_verification_exit_code(tmp_path):
    report, code = run_cli(tmp_path, ["example", "roots-of-unity", "--n", "4", "--tol", "0"])
    assert code == 3 and report["status"] == "verification_failed"


def test_missing_input(tmp_path):
    report, code = run_cli(tmp_path, ["spectrum"])
    assert code == 1


def test_documents():
    with pytest.raises(DocumentError):
        parse_document({"kind": "nonsense"})
    with pytest.raises(DocumentError):
        parse_document({"kind": "measure", "points": []})
    with pytest.raises(RootOffCircle):
        parse_document({"kind": "spectrum", "points": [[2, 0]]})
    kind, pts = parse_document({"kind": "spectrum", "points": [[0, 1], {"angle": -np.pi / 2}]})
    np.testing.assert_allclose(pts, [np.pi / 2, 1.5 * np.pi])
    kind, data = parse_document(verblunsky([[0.1, 0.2]], [0, 1]))
    assert dump_data(data) == verblunsky([[0.1, 0.2]], [0.0, 1.0])
    assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cmvinverse", "example", "roots-of-unity", "--n", "3", "--verbose"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "ok"
    assert "PASS" in proc.stderr
