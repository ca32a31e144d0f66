import json

import pytest
from fastapi.testclient import TestClient

from scall.fixtures import auv_json
from scall.service import create_app

from conftest import e1_doc, e1_variant


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_validate_ok(client):
    r = client.post("/api/v1/validate", json=e1_doc())
    assert r.status_code == 200
    assert r.json() == {"valid": True, "report": []}


def test_validate_reports_asymmetric_k(client):
    r = client.post("/api/v1/validate", json=e1_variant(K=[[0, 2], [3, 0]]))
    assert r.status_code == 200
    body = r.json()
    assert body["valid"] is False
    assert "ASYMMETRIC_K" in [issue["code"] for issue in body["report"]]


def test_validate_non_json_body_is_400(client):
    r = client.post("/api/v1/validate", content=b"not json")
    assert r.status_code == 400
    assert r.json()["error"] == "MALFORMED_BODY"


def test_validate_never_500_on_weird_documents(client):
    for payload in ([1, 2], {"components": "nope"}, {}, "str"):
        r = client.post("/api/v1/validate", json=payload)
        assert r.status_code == 200
        assert r.json()["valid"] is False


def test_ahp_uniform(client):
    r = client.post("/api/v1/ahp", json={"comparison": [[1, 1, 1], [1, 1, 1], [1, 1, 1]]})
    assert r.status_code == 200
    body = r.json()
    assert body["weights"] == pytest.approx([1 / 3, 1 / 3], abs=1e-9)
    assert body["fc"] == pytest.approx(1 / 3, abs=1e-9)
    assert body["lambdaMax"] == pytest.approx(3, abs=1e-9)


def test_ahp_consistent_matrix_with_fractions(client):
    r = client.post(
        "/api/v1/ahp",
        json={"comparison": [[1, 2, 4], ["1/2", 1, 2], ["1/4", "1/2", 1]]},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["weights"] + [body["fc"]] == pytest.approx([4 / 7, 2 / 7, 1 / 7], abs=1e-9)
    assert body["cr"] == pytest.approx(0, abs=1e-9)


def test_ahp_inconsistent_is_422_with_cr(client):
    cycle = [[1, 9, "1/9"], ["1/9", 1, 9], [9, "1/9", 1]]
    r = client.post("/api/v1/ahp", json={"comparison": cycle})
    assert r.status_code == 422
    body = r.json()
    assert body["error"] == "INCONSISTENT"
    assert body["detail"]["cr"] > 0.1


def test_ahp_bad_matrix_is_400(client):
    r = client.post("/api/v1/ahp", json={"comparison": [[1, 2], [2, 1]]})
    assert r.status_code == 400
    r = client.post("/api/v1/ahp", json={"comparison": "nope"})
    assert r.status_code == 400


def test_allocate_exhaustive_e1(client):
    r = client.post(
        "/api/v1/allocate",
        json={"model": e1_doc(), "method": "exhaustive", "uniformWeights": True},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["best"] == ["h1", "h1"]
    assert body["bestResult"]["w"] == pytest.approx(2.5)
    assert body["exact"] is True


def test_allocate_uses_embedded_comparison(client):
    doc = e1_doc()
    doc["comparison"] = [[1, 1], [1, 1]]  # uniform over (mem, communication)
    r = client.post("/api/v1/allocate", json={"model": doc, "method": "exhaustive"})
    assert r.status_code == 200
    assert r.json()["bestResult"]["w"] == pytest.approx(2.5)


def test_allocate_infeasible_is_409(client):
    r = client.post(
        "/api/v1/allocate",
        json={"model": e1_variant(R=[[1], [1]]), "method": "exhaustive", "uniformWeights": True},
    )
    assert r.status_code == 409
    assert r.json()["error"] == "NO_FEASIBLE_ALLOCATION"


def test_allocate_invalid_model_is_422(client):
    r = client.post(
        "/api/v1/allocate",
        json={"model": e1_variant(K=[[0, 2], [3, 0]]), "method": "ga"},
    )
    assert r.status_code == 422
    body = r.json()
    assert body["error"] == "INVALID_MODEL"
    assert "ASYMMETRIC_K" in [i["code"] for i in body["detail"]["report"]]


def test_allocate_inconsistent_comparison_is_422(client):
    doc = e1_doc()
    doc["comparison"] = [[1, 9], ["1/9", 1]]  # consistent (2x2) -> fine
    r = client.post("/api/v1/allocate", json={"model": doc, "method": "exhaustive"})
    assert r.status_code == 200
    doc2 = e1_doc()
    doc2["resources"].append({"id": "cpu", "name": "Cpu", "unit": "us"})
    doc2["T"] = [[[2, 1], [4, 1]], [[3, 1], [1, 1]]]
    doc2["R"] = [[5, 9], [5, 9]]
    doc2["comparison"] = [[1, 9, "1/9"], ["1/9", 1, 9], [9, "1/9", 1]]
    r = client.post("/api/v1/allocate", json={"model": doc2, "method": "ga"})
    assert r.status_code == 422
    assert r.json()["error"] == "INCONSISTENT"


def test_allocate_malformed_bodies_are_400(client):
    assert client.post("/api/v1/allocate", content=b"{{{").status_code == 400
    assert client.post("/api/v1/allocate", json={"method": "ga"}).status_code == 400
    assert (
        client.post("/api/v1/allocate", json={"model": e1_doc(), "method": "annealing"}).status_code
        == 400
    )
    assert (
        client.post(
            "/api/v1/allocate", json={"model": e1_doc(), "method": "ga", "alternatives": 0}
        ).status_code
        == 400
    )
    assert (
        client.post(
            "/api/v1/allocate", json={"model": e1_doc(), "method": "ga", "seed": "abc"}
        ).status_code
        == 400
    )


def test_allocate_space_too_large_is_413():
    small_cap = TestClient(create_app(exhaustive_cap=100))
    r = small_cap.post(
        "/api/v1/allocate",
        json={"model": json.loads(auv_json()), "method": "exhaustive"},
    )
    assert r.status_code == 413
    assert r.json()["error"] == "SPACE_TOO_LARGE"


def test_allocate_timeout_is_504():
    impatient = TestClient(create_app(time_cap_s=0.001))
    r = impatient.post(
        "/api/v1/allocate",
        json={"model": json.loads(auv_json()), "method": "exhaustive"},
    )
    assert r.status_code == 504
    assert r.json()["error"] == "TIMEOUT"


def test_allocate_alternatives_merged_report(client):
    r = client.post(
        "/api/v1/allocate",
        json={"model": json.loads(auv_json()), "method": "ga", "seed": 5, "alternatives": 3},
    )
    assert r.status_code == 200
    body = r.json()
    alts = body["alternatives"]
    assert 1 <= len(alts) <= 3
    ws = [a["result"]["w"] for a in alts]
    assert ws == sorted(ws)
    assert len({tuple(a["p"]) for a in alts}) == len(alts)
    assert body["best"] == alts[0]["p"]


def test_allocate_ga_config_override(client):
    r = client.post(
        "/api/v1/allocate",
        json={
            "model": e1_doc(),
            "method": "ga",
            "seed": 9,
            "uniformWeights": True,
            "gaConfig": {"populationSize": 8, "generations": 10, "stallLimit": 5},
        },
    )
    assert r.status_code == 200
    body = r.json()
    assert body["seed"] == 9
    assert body["bestResult"]["w"] == pytest.approx(2.5)
    r = client.post(
        "/api/v1/allocate",
        json={"model": e1_doc(), "method": "ga", "gaConfig": {"populationSize": 1}},
    )
    assert r.status_code == 400


def test_responses_identical_for_identical_requests(client):
    body = {"model": json.loads(auv_json()), "method": "ga", "seed": 21}
    a = client.post("/api/v1/allocate", json=body).json()
    b = client.post("/api/v1/allocate", json=body).json()
    a.pop("elapsed")
    b.pop("elapsed")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_static_ui_serving(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>allocator</body></html>")
    app = create_app(static_dir=str(tmp_path))
    client = TestClient(app)
    r = client.get("/")
    assert r.status_code == 200
    assert "allocator" in r.text
    # API still reachable alongside the static mount
    assert client.post("/api/v1/validate", json=e1_doc()).status_code == 200


def test_cors_headers_present(client):
    r = client.options(
        "/api/v1/validate",
        headers={"Origin": "http://localhost:5173", "Access-Control-Request-Method": "POST"},
    )
    assert r.headers.get("access-control-allow-origin") == "*"
