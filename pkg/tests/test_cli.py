import json

import pytest

from cli import run
from core.codec import opetope_to_json
from core.ladder import ARROW, Frame, ladder


@pytest.fixture
def write_json(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def output(capsys):
    return json.loads(capsys.readouterr().out)


def as_json(data):
    return json.loads(json.dumps(data))


def test_enumerate_arity(capsys):
    assert run(["enumerate", "--dim", "2", "--arity", "3"]) == 0
    assert len(output(capsys)) == 6
    assert run(["enumerate", "--dim", "2", "--arity", "0"]) == 0
    assert len(output(capsys)) == 1


def test_enumerate_low_dimensions(capsys):
    assert run(["enumerate", "--dim", "0"]) == 0
    assert output(capsys) == [{"dim": 0}]


def test_enumerate_corolla_frame(capsys):
    assert run(["enumerate", "--dim", "3", "--frame", "(1,1)->1"]) == 0
    assert len(output(capsys)) == 2
    assert run(["enumerate", "--dim", "3", "--frame", "(2,1)->3"]) == 0
    assert output(capsys) == []


def test_enumerate_frame_file(capsys, write_json, face_example):
    path = write_json("frame.json", {
        "inputs": [opetope_to_json(a) for a in face_example.inputs],
        "output": opetope_to_json(face_example.output),
    })
    assert run(["enumerate", "--dim", "3", "--frame-file", path]) == 0
    assert as_json(opetope_to_json(face_example)) in output(capsys)


def test_output_is_deterministic(capsys):
    run(["enumerate", "--dim", "2", "--arity", "3"])
    first = capsys.readouterr().out
    run(["enumerate", "--dim", "2", "--arity", "3"])
    assert capsys.readouterr().out == first


def test_validate(capsys, write_json, face_example):
    assert run(["validate", write_json("theta.json", opetope_to_json(face_example))]) == 0
    assert output(capsys) == {"valid": True, "kind": "opetope", "dim": 3, "arity": 2}


def test_validate_failure(capsys, write_json, face_example):
    data = opetope_to_json(face_example)
    other = next(a for a in ladder.enumerate_opetopes(2, Frame((ARROW,) * 4, ARROW)) if a != face_example.output)
    data["output"] = opetope_to_json(other)
    assert run(["validate", write_json("bad.json", data)]) == 1
    captured = capsys.readouterr()
    assert json.loads(captured.out) == {
        "valid": False,
        "kind": "CompositeMismatch",
        "error": "Composing the inputs along the configuration does not give the output",
    }
    assert "CompositeMismatch" in captured.err


def test_validate_graph(capsys, write_json):
    path = write_json("graph.json", {"dom": "1", "cod": "1", "pairs": [[0, 1]]})
    assert run(["validate", path]) == 0
    assert output(capsys) == {"valid": True, "kind": "graph", "pairs": 1, "tree_allowable": None}


def test_parse_errors(capsys, tmp_path, write_json):
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert run(["validate", str(broken)]) == 2
    assert run(["validate", str(tmp_path / "missing.json")]) == 2
    assert run(["validate", write_json("shape.json", {"dom": "[1,", "cod": "1", "pairs": []})]) == 2
    assert run(["enumerate", "--dim", "3", "--frame", "3->4"]) == 2
    assert run(["enumerate", "--dim", "2"]) == 2
    assert run(["no-such-command"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bounds(capsys):
    assert run(["enumerate", "--dim", "9", "--arity", "1"]) == 3
    assert run(["enumerate", "--dim", "2", "--arity", "5", "--max-leaves", "4"]) == 3
    assert run(["crosscheck", "--dim", "5"]) == 3


def test_homs(capsys, write_json):
    a = write_json("a.json", opetope_to_json(ladder.chain_opetope((0, 1))))
    b = write_json("b.json", opetope_to_json(ladder.chain_opetope((1, 0))))
    assert run(["homs", a, b]) == 0
    (morphism,) = output(capsys)
    assert sorted(morphism["sigma"]) == [0, 1]


def test_faces(capsys, write_json, face_example):
    path = write_json("theta.json", opetope_to_json(face_example))
    assert run(["faces", path]) == 0
    result = output(capsys)
    assert result["faces"] == ["s1", "s2", "t"]
    assert len(result["relations"]) == 6
    assert run(["faces", path, "--depth", "2"]) == 0
    assert len(output(capsys)["classes"]) == 5


def test_crosscheck(capsys):
    assert run(["crosscheck", "--dim", "2", "--max-leaves", "3"]) == 0
    report = output(capsys)
    assert report["status"] == "match"
    assert [f["ladder_count"] for f in report["frames"]] == [1, 1, 2, 6]


def test_export_dot(capsys, write_json, face_example):
    assert run(["export-dot", write_json("theta.json", opetope_to_json(face_example))]) == 0
    assert capsys.readouterr().out.startswith("graph opetope3 {")
