import json
from fractions import Fraction
import xml.etree.ElementTree as ET

import pytest

from shelterpath.arrangement import build_arrangement
from shelterpath.cli import main
from shelterpath.fixtures import CANONICAL, nested_arcs
from shelterpath.jsonio import dump_json, instance_from_dict, instance_to_dict, load_instance


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, make in CANONICAL.items():
        out[name] = tmp_path / f"{name}.json"
        dump_json(instance_to_dict(make()), out[name])
    doc = instance_to_dict(nested_arcs())
    doc["paths"]["b"][1] = ["1/0", 1]
    out["bad"] = tmp_path / "bad.json"
    dump_json(doc, out["bad"])
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    lines = [json.loads(s) for s in captured.out.splitlines() if s.startswith("{")]
    return code, lines, captured.err


def test_round_trip_is_exact(files):
    for name, make in CANONICAL.items():
        assert load_instance(files[name]) == make()


def test_parse_errors():
    doc = instance_to_dict(nested_arcs())
    del doc["paths"]["c"]
    with pytest.raises(ValueError):
        instance_from_dict(doc)
    doc = instance_to_dict(nested_arcs())
    doc["B"] = [5, 0]
    with pytest.raises(ValueError):
        instance_from_dict(doc)


def test_validate(files, capsys):
    code, lines, _ = run(capsys, "validate", files["nested-arcs"])
    assert code == 0 and lines == [{"valid": True, "crossings": 0}]
    code, lines, _ = run(capsys, "validate", files["triple-point"])
    assert code == 1 and lines[0]["kind"] == "triple-point"
    code, _, err = run(capsys, "validate", files["bad"])
    assert code == 2 and "zero denominator" in err
    code, _, err = run(capsys, "validate", files["bad"].parent / "missing.json")
    assert code == 2


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["trace"])
    assert exc.value.code == 2


def test_trace_nested(files, capsys, tmp_path):
    svg, report = tmp_path / "n.svg", tmp_path / "n.json"
    code, lines, _ = run(capsys, "trace", files["nested-arcs"], "--svg", svg, "--report", report)
    assert code == 0 and set(lines[0]["owners"]) == {"b"}
    doc = json.loads(report.read_text())
    assert doc["polyline"] == [[0, 0], [2, 1], [4, 0]]
    assert (tmp_path / "n.png").stat().st_size > 0

    root = ET.parse(svg).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    edges = [e for e in root.iter(f"{ns}polyline") if "edge" in e.get("class", "")]
    assert len(edges) == len(build_arrangement(nested_arcs()).edges)
    assert root.find(f".//{ns}polyline[@id='trace']") is not None


def test_trace_x_crossing_switches(files, capsys):
    code, lines, _ = run(capsys, "trace", files["x-crossing"])
    assert code == 0
    assert lines[0]["owners"] == ["a", "a", "b", "b"] and "switch" in lines[0]["switches"]


def test_trace_invalid_instance(files, capsys):
    code, lines, _ = run(capsys, "trace", files["triple-point"])
    assert code == 1 and lines[0]["kind"] == "triple-point"


def test_svg_is_deterministic(files, capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"x{k}.svg"
        assert run(capsys, "trace", files["double-winding"], "--svg", path)[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_winding(files, capsys):
    code, lines, _ = run(capsys, "winding", files["nested-arcs"], "--point", "2,1/3", "--loop", "a,c")
    assert code == 0 and abs(lines[0]["winding"]) == 1
    assert abs(lines[0]["float"] - lines[0]["winding"]) < 1e-9
    code, lines, _ = run(capsys, "winding", files["nested-arcs"], "--point", "40,-3", "--loop", "a,c")
    assert code == 0 and lines[0]["winding"] == 0
    code, _, err = run(capsys, "winding", files["nested-arcs"], "--point", "1,1", "--loop", "a,c")
    assert code == 1 and "lies on loop edge" in err
    code, _, _ = run(capsys, "winding", files["nested-arcs"], "--point", "1,1", "--loop", "a,a")
    assert code == 2
    code, _, _ = run(capsys, "winding", files["nested-arcs"], "--point", "1", "--loop", "a,b")
    assert code == 2


def test_faces(files, capsys):
    code, lines, _ = run(capsys, "faces", files["nested-arcs"])
    assert code == 0
    assert lines[0]["bounded_faces"] == 2
    assert lines[0]["euler_characteristic"] == 1 + lines[0]["components"]


def test_counterexample(capsys, tmp_path):
    code, _, _ = run(capsys, "counterexample", "--generations", 0, "--out", tmp_path)
    assert code == 2
    code, lines, _ = run(capsys, "counterexample", "--generations", 1, "--out", tmp_path)
    assert code == 0 and lines[0]["sweep_count"] >= 1
    for name in ("stage1.json", "stage1_trace.json", "stage1_oscillation.json", "stage1.svg",
                 "stage1.png", "stage1_oscillation.png"):
        assert (tmp_path / name).stat().st_size > 0
    stage = json.loads((tmp_path / "stage1.json").read_text())
    assert stage["annotations"]["inventory"]["straight:b"] == 2
    # the annotations block does not get in the way of loading the stage back
    assert len(load_instance(tmp_path / "stage1.json").path("b").vertices) > 10


def test_counterexample_three_decreases(capsys, tmp_path):
    code, lines, _ = run(capsys, "counterexample", "--generations", 3, "--out", tmp_path)
    assert code == 0
    ds = [Fraction(d) for d in lines[0]["approach_distances"]]
    assert all(x > y for x, y in zip(ds, ds[1:])) and len(ds) >= 3


def test_counterexample_schedule_violation(capsys, tmp_path):
    code, _, err = run(capsys, "counterexample", "--generations", 6, "--out", tmp_path)
    assert code == 1 and "schedule" in err

