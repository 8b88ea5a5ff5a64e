import pytest
from fastapi.testclient import TestClient

from core.codec import opetope_to_json
from core.ladder import ARROW, Frame, ladder
from main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_enumerate(client):
    response = client.post("/v1/enumerate", json={"dim": 2, "arity": 3})
    assert response.status_code == 200
    assert len(response.json()) == 6


def test_enumerate_corolla_frame(client):
    response = client.post("/v1/enumerate", json={"dim": 3, "frame": "(1,1)->1"})
    assert response.status_code == 200
    assert len(response.json()) == 2


def test_validate(client, face_example):
    response = client.post("/v1/validate", json=opetope_to_json(face_example))
    assert response.status_code == 200
    assert response.json() == {"valid": True, "kind": "opetope", "dim": 3, "arity": 2}


def test_validate_failure(client, face_example):
    data = opetope_to_json(face_example)
    other = next(a for a in ladder.enumerate_opetopes(2, Frame((ARROW,) * 4, ARROW)) if a != face_example.output)
    data["output"] = opetope_to_json(other)
    response = client.post("/v1/validate", json=data)
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert detail["valid"] is False
    assert detail["kind"] == "CompositeMismatch"


def test_bad_requests(client):
    response = client.post("/v1/validate", content="not json", headers={"Content-Type": "application/json"})
    assert response.status_code == 400
    assert client.post("/v1/enumerate", json={"dim": -1}).status_code == 400
    assert client.post("/v1/enumerate", json={"dim": 3}).status_code == 400
    assert client.post("/v1/validate", json=[1, 2]).status_code == 400
    assert client.post("/v1/faces", json={"opetope": {"dim": 3}, "depth": 5}).status_code == 400


def test_bound_exceeded(client):
    assert client.post("/v1/enumerate", json={"dim": 9, "arity": 1}).status_code == 413
    assert client.post("/v1/crosscheck", json={"dim": 5}).status_code == 413


def test_homs(client):
    body = {
        "source": opetope_to_json(ladder.chain_opetope((0, 1, 2))),
        "target": opetope_to_json(ladder.chain_opetope((2, 1, 0))),
    }
    response = client.post("/v1/homs", json=body)
    assert response.status_code == 200
    assert len(response.json()) == 1


def test_faces(client, face_example):
    response = client.post("/v1/faces", json={"opetope": opetope_to_json(face_example), "depth": 2})
    assert response.status_code == 200
    assert len(response.json()["classes"]) == 5


def test_crosscheck(client):
    response = client.post("/v1/crosscheck", json={"dim": 2, "max_leaves": 3})
    assert response.status_code == 200
    assert response.json()["status"] == "match"


def test_export_dot(client):
    response = client.post("/v1/export-dot", json={"dom": "1", "cod": "1", "pairs": [[0, 1]]})
    assert response.status_code == 200
    assert response.text.startswith("graph G {")
    assert response.headers["content-type"].startswith("text/vnd.graphviz")
