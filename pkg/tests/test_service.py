"""HTTP service wrapper."""

import pytest
from fastapi.testclient import TestClient

from isingtop.service import build_app


@pytest.fixture(scope="module")
def client():
    return TestClient(build_app())


def test_energy_route(client):
    r = client.post("/energy", json={"field": {"kind": "real", "a": 0.0, "b": 0.0},
                                     "num_k": 301})
    assert r.status_code == 200
    body = r.json()
    assert body["schema_version"] == 1
    assert body["energy"] == pytest.approx(-2.0)


def test_chern_route(client):
    r = client.post("/chern", json={"field": {"kind": "real", "a": 0.5, "b": 1.0},
                                    "n_k": 512, "n_phi": 128})
    assert r.status_code == 200
    body = r.json()
    assert body["snapped"] == 1.0
    assert body["methods_agree"] is True


def test_winding_route(client):
    r = client.post("/winding", json={"field": {"kind": "complex", "a": 0.6, "b": 0.8},
                                      "n_k": 512})
    assert r.status_code == 200
    assert r.json()["winding"] == 0.5
    assert r.json()["boundary"] is True


def test_loop_route(client):
    r = client.post("/loop", json={"field": {"kind": "real", "a": 0.5, "b": 1.0},
                                   "n_k": 256})
    assert r.status_code == 200
    body = r.json()
    assert body["columns"] == ["k", "x", "y"]
    assert len(body["rows"]) == 257
    assert body["winding"] == 1.0


def test_scan_route(client):
    r = client.post("/scan", json={"kind": "real", "start": [0.0, 1.0],
                                   "end": [3.0, 1.0], "samples": 101, "num_k": 201})
    assert r.status_code == 200
    body = r.json()
    assert body["columns"] == ["a", "b", "energy", "d2e"]
    assert len(body["rows"]) == 101
    assert len(body["criticals"]) == 1


def test_oracle_route(client):
    r = client.post("/oracle", json={"field": {"kind": "real", "a": 1.3, "b": 0.4},
                                     "sizes": [2, 3], "num_k": 301})
    assert r.status_code == 200
    body = r.json()
    assert body["monotone"] is True
    for check in body["realspace"]:
        assert check["max_diff"] < 1e-9


def test_chern_grid_route(client):
    r = client.post("/chern-grid", json={"kind": "real", "a_range": [0.5, 2.0],
                                         "b_range": [1.0, 1.0], "steps": 2,
                                         "n_k": 512})
    assert r.status_code == 200
    assert len(r.json()["rows"]) == 4


def test_guard_maps_to_422(client):
    r = client.post("/scan", json={"kind": "real", "start": [0.0, 1.0],
                                   "end": [3.0, 1.0], "samples": 8})
    assert r.status_code == 422
    body = r.json()
    assert body["error"] == "SizeTooSmall"
    assert "samples" in body["message"]


def test_pydantic_validation_422(client):
    r = client.post("/energy", json={"field": {"kind": "real", "a": 1.0}})
    assert r.status_code == 422
