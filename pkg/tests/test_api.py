import pytest
from fastapi.testclient import TestClient

from app.services.fixtures import read_raw
from main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_list_fixtures(client):
    response = client.get("/fixtures")
    assert response.status_code == 200
    body = response.json()
    assert "torus1" in body["items"]
    assert body["count"] == len(body["items"])


def test_validate_by_name(client):
    response = client.post("/validate", json={"fixture": "ntorus1"})
    assert response.status_code == 200
    body = response.json()
    assert body["is_dimer"] is True
    assert len(body["faces"]) == 2


def test_validate_inline(client):
    response = client.post("/validate", json={"dimer": read_raw("torus1"), "config": {"area": 4}})
    assert response.status_code == 200
    assert response.json()["is_dimer"] is False


def test_exactly_one_source(client):
    assert client.post("/validate", json={}).status_code == 422
    both = {"fixture": "torus1", "dimer": read_raw("torus1")}
    assert client.post("/validate", json=both).status_code == 422


def test_missing_fixture(client):
    response = client.post("/validate", json={"fixture": "no-such-dimer"})
    assert response.status_code == 404
    assert response.json()["detail"]["statusCode"] == 404


def test_structural_errors(client):
    response = client.post("/zigzags", json={"fixture": "torus1"})
    assert response.status_code == 422
    assert response.json()["detail"]["errorMessage"] == "Inconsistent face orientation"


def test_mu(client):
    response = client.post("/mu", json={"fixture": "torus1", "inputs": ["β", "γ"]})
    assert response.status_code == 200
    body = response.json()
    assert body["result"] == "-βγ"
    assert body["complete"] is True


def test_mu_rejects_negative_caps(client):
    response = client.post("/mu", json={"fixture": "torus1", "inputs": ["β"], "config": {"truncation": -1}})
    assert response.status_code == 422


def test_zigzags(client):
    response = client.post("/zigzags", json={"fixture": "ntorus1"})
    assert response.status_code == 200
    body = response.json()
    assert [item["path"] for item in body["items"]] == ["d1L h1R", "h1L v1R", "v1L d1R"]
    assert body["cohomology"]["L1->L1"] == 2


def test_minimal_unit(client):
    response = client.post(
        "/minimal", json={"fixture": "ntorus1", "inputs": ["id[L0->L0]", "coid[L0->L0]"], "config": {"truncation": 1}}
    )
    assert response.status_code == 200
    assert response.json()["result"] == "(-1)*coid"


def test_render(client):
    response = client.post("/render", json={"fixture": "q3", "what": "zigzags"})
    assert response.status_code == 200
    assert response.json()["svg"].lstrip().startswith("<?xml")
