import pytest
from fastapi.testclient import TestClient

from api.server import app
from cli.config import VERSION


@pytest.fixture
def client():
    with TestClient(app) as client:
        yield client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "version": VERSION}
    assert client.get("/").json()["status"] == "running"


def test_eval(client):
    response = client.post("/eval", json={"params": {"z": [1, 0]}})
    assert response.status_code == 200
    body = response.json()
    assert body["exit_code"] == 0
    assert body["report"] is None
    assert "z_re,z_im,val_re,val_im,bound,N_used" in body["csv"]


def test_certify_refusal(client):
    response = client.post("/certify", json={"params": {"operator": "identity"}})
    assert response.status_code == 200
    body = response.json()
    assert body["exit_code"] == 2
    assert body["report"]["certificate"]["is_scalar"]


def test_identities(client):
    response = client.post("/identities", json={"r": 3, "gamma": ["-2/3", "-1/3"],
                                                "params": {"cases": 2, "order": 6}})
    assert response.status_code == 200
    assert response.json()["report"]["passed"]


def test_invalid_index_is_unprocessable(client):
    response = client.post("/eval", json={"gamma": ["-2"]})
    assert response.status_code == 422


def test_library_errors_map_to_bad_request(client):
    response = client.post("/eval", json={"params": {"z": [5, 0], "tol": 1e-17}})
    assert response.status_code == 400
    assert response.json()["detail"]["exit_code"] == 3
