import json

import numpy as np
import pytest

from grades import Exact, RipBounds, Sampled, SolverConfig, grades_solve, make_instance
from grades import io as gio
from grades.instances import gaussian_instance


def test_instance_round_trip(tmp_path):
    inst = gaussian_instance(7, 11, 3, 5)
    path = tmp_path / "inst.json"
    gio.write_instance(path, inst, {"seed": 5})
    back = gio.read_instance(path)
    assert back == inst
    assert back.phi.tobytes() == inst.phi.tobytes()
    assert gio.read_instance_metadata(path) == {"seed": 5}


def test_instance_without_truth(tmp_path):
    from grades import ProblemInstance

    inst = ProblemInstance(phi=np.eye(2) * 0.1, y=[1 / 3, 2 / 7])
    gio.write_instance(tmp_path / "a.json", inst)
    assert gio.read_instance(tmp_path / "a.json") == inst


@pytest.mark.parametrize("prov", [Exact(), Sampled(500, 2**64 - 1)])
def test_bounds_round_trip(tmp_path, prov):
    b = RipBounds(0.1 + 0.2, 1 / 3 * 4, 6, prov)
    gio.write_bounds(tmp_path / "b.json", b, condition_ok=False)
    assert gio.read_bounds(tmp_path / "b.json") == b
    doc = json.loads((tmp_path / "b.json").read_text())
    assert doc["schema_version"] == 1 and doc["condition_ok"] is False


def test_result_round_trip(tmp_path):
    inst = gaussian_instance(20, 15, 2, 1)
    res = grades_solve(inst, SolverConfig(2, 3.0, 1e-8))
    gio.write_result(tmp_path / "r.json", res, recovery_error=float("nan"))
    back = gio.read_result(tmp_path / "r.json")
    assert back == res
    assert json.loads((tmp_path / "r.json").read_text())["recovery_error"] is None


def test_trace_csv(tmp_path):
    trace = np.array([4.0, 1e-3, 1 / 3, 0.0])
    gio.write_trace(tmp_path / "t.csv", trace)
    raw = (tmp_path / "t.csv").read_bytes()
    assert raw.startswith(b"iteration,objective\n0,4.0\n")
    assert b"\r" not in raw
    np.testing.assert_array_equal(gio.read_trace(tmp_path / "t.csv"), trace)


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "bounds", "schema_version": 1},
        {"kind": "instance", "schema_version": 99},
        [1, 2],
        {"kind": "instance", "schema_version": 1, "m": 2, "n": 2, "phi": [[1]], "y": [1, 2]},
    ],
)
def test_format_errors(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(gio.FormatError):
        gio.read_instance(path)


def test_bad_provenance(tmp_path):
    path = tmp_path / "b.json"
    doc = gio.bounds_to_dict(RipBounds(1.0, 1.5, 2))
    doc["provenance"] = {"type": "guess"}
    path.write_text(json.dumps(doc))
    with pytest.raises(gio.FormatError):
        gio.read_bounds(path)
