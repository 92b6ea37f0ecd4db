import json
from pathlib import Path

import numpy as np
import pytest

from coinrep import statefile
from coinrep.errors import OutOfRange, SchemaError

GOLDEN = Path(__file__).parent / "golden"
FIXTURES = Path(__file__).parent / "fixtures"


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


# -- state files ------------------------------------------------------------------


def test_unknown_version_rejected():
    with pytest.raises(SchemaError):
        statefile.parse_state({"schema_version": 2, "kind": "probability-triple",
                               "payload": {"p1": 0.5, "p2": 0.5, "p3": 0.5}})


def test_unknown_kind_rejected():
    with pytest.raises(SchemaError):
        statefile.parse_state({"schema_version": 1, "kind": "qutrit", "payload": {}})


def test_payload_schema_enforced():
    with pytest.raises(SchemaError):
        statefile.parse_state({"schema_version": 1, "kind": "probability-triple",
                               "payload": {"p1": 0.5, "p2": 0.5}})
    with pytest.raises(SchemaError):
        statefile.parse_state({"schema_version": 1, "kind": "density2",
                               "payload": {"re": [[1, 0]], "im": [[0, 0], [0, 0]]}})


def test_range_checked_on_load():
    state = statefile.parse_state({"schema_version": 1, "kind": "probability-triple",
                                   "payload": {"p1": 0.5, "p2": 1.5, "p3": 0.5}})
    with pytest.raises(OutOfRange):
        statefile.as_triple(state)


def test_float_round_trip(tmp_path, rng):
    p = rng.random(3)
    path = tmp_path / "s.json"
    statefile.write_json(path, statefile.triple_file(p).to_dict())
    assert np.array_equal(statefile.as_triple(statefile.load_state(path)), p)


def test_density_file(tmp_path):
    from coinrep import qubit
    rho = qubit.to_density([0.6, 0.7, 0.8])
    path = tmp_path / "d.json"
    statefile.write_json(path, statefile.matrix_file("density2", rho).to_dict())
    np.testing.assert_array_equal(statefile.as_triple(statefile.load_state(path)), [0.6, 0.7, 0.8])


# -- check --------------------------------------------------------------------------


def test_check_center(run_cli, state_file):
    code, out, _ = run_cli("check", state_file([0.5, 0.5, 0.5]))
    report = json.loads(out)
    assert code == 0
    assert report["quantum"] is True
    assert report["entropy_vn"] == pytest.approx(np.log(2), abs=1e-12)


def test_check_classical_corner(run_cli, state_file):
    code, out, _ = run_cli("check", state_file([1, 1, 1]))
    assert code == 2
    assert json.loads(out)["quantum"] is False


def test_check_spectrum(run_cli, state_file):
    code, out, _ = run_cli("check", state_file([0.6, 0.7, 0.8]), "--q", "3")
    report = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(report["lambda"], [0.874166, 0.125834], atol=1e-6)
    assert report["tsallis_q"] == 3.0


def test_check_errors(run_cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("check", str(bad))[0] == 1
    assert run_cli("check", str(tmp_path / "missing.json"))[0] == 1
    v2 = write(tmp_path, "v2.json", {"schema_version": 2, "kind": "probability-triple",
                                     "payload": {"p1": 0.5, "p2": 0.5, "p3": 0.5}})
    code, _, err = run_cli("check", v2)
    assert code == 1 and "schema_version" in err


def test_usage_error_exit_code(run_cli):
    with pytest.raises(SystemExit) as exc:
        run_cli("frobnicate")
    assert exc.value.code == 1


# -- superpose ----------------------------------------------------------------------


def test_superpose_convex_mix(run_cli, state_file, tmp_path):
    p, P = [1.0, 0.5, 0.5], [0.5, 1.0, 0.5]
    out_path = tmp_path / "out.json"
    code, out, _ = run_cli("superpose", state_file(p, "a.json"), state_file(P, "b.json"),
                           state_file([0.5, 0.5, 1.0], "k.json"), "--out", str(out_path))
    report = json.loads(out)
    assert code == 0
    assert report["normalizer"] == 1.0
    np.testing.assert_allclose(report["result"], p, atol=1e-15)
    assert statefile.load_state(out_path).kind == "probability-triple"


def test_superpose_golden(run_cli, state_file):
    doc = json.loads((FIXTURES / "superpose_golden.json").read_text())
    code, out, _ = run_cli("superpose", state_file(doc["state1"], "a.json"),
                           state_file(doc["state2"], "b.json"), state_file(doc["key"], "k.json"))
    report = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(report["result"], doc["expected"], atol=1e-12)
    assert report["oracle_deviation"] < 1e-12
    assert report["purity_residual"] < 1e-8


def test_superpose_degenerate(run_cli, state_file):
    code, _, err = run_cli("superpose", state_file([0.5, 0.5, 0.0], "a.json"),
                           state_file([0.5, 0.5, 1.0], "b.json"), state_file([1, 0.5, 0.5], "k.json"))
    assert code == 2
    assert "DegenerateDenominator" in err


# -- evolve -------------------------------------------------------------------------


def test_evolve_constant(run_cli, state_file):
    code, out, _ = run_cli("evolve", state_file([0.6, 0.7, 0.8]), "--obs", "0,0,0,0",
                           "--t", "1", "--steps", "10")
    doc = json.loads(out)
    assert code == 0
    statefile.validate(doc, statefile.TRAJECTORY_SCHEMA)
    assert all((s["p1"], s["p2"], s["p3"]) == (0.6, 0.7, 0.8) for s in doc["samples"])


def test_evolve_both(run_cli, state_file, tmp_path):
    out_path = tmp_path / "traj.json"
    code, out, _ = run_cli("evolve", state_file([1, 0.5, 0.5]), "--obs", "0,0,0.5,-0.5",
                           "--t", "3.14159265", "--steps", "1000", "--method", "both",
                           "--out", str(out_path))
    assert code == 0
    assert json.loads(out)["max_deviation"] < 1e-8
    doc = json.loads(out_path.read_text())
    for key in ("propagator", "integrator"):
        statefile.validate(doc[key], statefile.TRAJECTORY_SCHEMA)
        assert max(s["eigenvalue_drift"] for s in doc[key]["samples"]) < 1e-10


def test_evolve_invalid_state(run_cli, state_file):
    code, _, err = run_cli("evolve", state_file([1, 1, 1]), "--obs", "0,0,1,-1", "--t", "1")
    assert code == 2 and "NotQuantum" in err


def test_evolve_bad_obs(run_cli, state_file):
    with pytest.raises(SystemExit) as exc:
        run_cli("evolve", state_file([0.5, 0.5, 0.5]), "--obs", "1,2", "--t", "1")
    assert exc.value.code == 1


# -- render -------------------------------------------------------------------------


@pytest.mark.parametrize("layout", ["triada", "tower", "triangle"])
def test_render_golden(run_cli, state_file, tmp_path, layout):
    out_path = tmp_path / "fig.svg"
    code, _, _ = run_cli("render", state_file([0.6, 0.7, 0.8]), "--layout", layout, "--out", str(out_path))
    assert code == 0
    assert out_path.read_text() == (GOLDEN / f"p060708_{layout}.svg").read_text()


def test_render_io_error(run_cli, state_file, tmp_path):
    code, _, _ = run_cli("render", state_file([0.6, 0.7, 0.8]), "--out", str(tmp_path / "no" / "x.svg"))
    assert code == 1


# -- matrix -------------------------------------------------------------------------


def test_matrix_parametrize_basis(run_cli, tmp_path):
    path = write(tmp_path, "a.json", {"schema_version": 1, "kind": "amplitude2",
                                      "payload": {"re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}})
    code, out, _ = run_cli("matrix", "parametrize", path)
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "prob-table-15"
    assert set(doc["payload"]["diag"].values()) == {1.0}


def test_matrix_round_trip(run_cli, tmp_path, rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    a /= np.linalg.norm(a)
    a *= abs(a[0, 0]) / a[0, 0]
    src = write(tmp_path, "a.json", statefile.matrix_file("amplitude2", a).to_dict())
    table = tmp_path / "t.json"
    assert run_cli("matrix", "parametrize", src, "--out", str(table))[0] == 0
    code, out, _ = run_cli("matrix", "reconstruct", str(table))
    back = statefile.as_matrix(statefile.parse_state(json.loads(out)))
    assert code == 0
    np.testing.assert_allclose(back, a, atol=1e-12)


def test_matrix_not_normalized(run_cli, tmp_path):
    path = write(tmp_path, "a.json", {"schema_version": 1, "kind": "amplitude2",
                                      "payload": {"re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}})
    code, _, err = run_cli("matrix", "parametrize", path)
    assert code == 2 and "NotNormalized" in err


def test_matrix_inconsistent_table(run_cli, tmp_path):
    doc = {"schema_version": 1, "kind": "prob-table-15",
           "payload": {"diag": {"22": 0.75, "33": 0.75, "44": 0.75},
                       "pairs": {k: [0.5, 0.5] for k in ("12", "13", "14", "23", "24", "34")}}}
    code, _, err = run_cli("matrix", "reconstruct", write(tmp_path, "t.json", doc))
    assert code == 2 and "InconsistentTable" in err


def test_matrix_t_check(run_cli):
    code, out, _ = run_cli("matrix", "t-check")
    assert code == 0
    assert json.loads(out)["max_deviation"] < 1e-14
