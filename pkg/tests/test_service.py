"""HTTP facade: endpoint contracts and error mapping."""

import pytest
from fastapi.testclient import TestClient

from baerkit.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


class TestClassify:
    def test_ok(self, client, tmp_path):
        r = client.post("/classify", json={"spec": "zmod 6",
                                           "cache_dir": str(tmp_path)})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"] is True
        assert body["report"]["result"]["flags"]["baer"] is True

    def test_bad_spec_400(self, client, tmp_path):
        r = client.post("/classify", json={"spec": "zmood 6",
                                           "cache_dir": str(tmp_path)})
        assert r.status_code == 400
        assert "zmood" in r.json()["detail"]

    def test_order_cap_400(self, client, tmp_path):
        r = client.post("/classify", json={"spec": "zmod 50", "order_cap": 10,
                                           "cache_dir": str(tmp_path)})
        assert r.status_code == 400


class TestVerify:
    def test_suite_ok(self, client, tmp_path):
        r = client.post("/verify", json={
            "suite": "thm12-poly", "spec": "zmod 6", "alpha": "identity",
            "bounds": {"n": 2, "d": 3}, "cache_dir": str(tmp_path),
        })
        assert r.status_code == 200
        assert r.json()["passed"] is True

    def test_unknown_suite_400(self, client, tmp_path):
        r = client.post("/verify", json={"suite": "bogus", "spec": "zmod 6",
                                         "cache_dir": str(tmp_path)})
        assert r.status_code == 400

    def test_contract_failure_stays_200(self, client, tmp_path):
        r = client.post("/verify", json={
            "suite": "inverse-thm24", "spec": "product (zmod 2) (zmod 2)",
            "alpha": "swap", "cache_dir": str(tmp_path),
        })
        assert r.status_code == 200
        assert r.json()["passed"] is False

    def test_bounds_validation_422(self, client):
        r = client.post("/verify", json={"suite": "classify", "spec": "zmod 6",
                                         "bounds": {"n": -1}})
        assert r.status_code == 422


class TestMine:
    def test_ok(self, client, tmp_path):
        r = client.post("/mine", json={"family": "zmod",
                                       "predicate": "!semiprime",
                                       "max_order": 12,
                                       "cache_dir": str(tmp_path)})
        assert r.status_code == 200
        body = r.json()
        assert body["count"] == 4
        assert body["matches"][0]["spec"] == "zmod 4"

    def test_bad_predicate_400(self, client, tmp_path):
        r = client.post("/mine", json={"family": "zmod", "predicate": "(",
                                       "cache_dir": str(tmp_path)})
        assert r.status_code == 400


class TestExplain:
    def test_known(self, client):
        r = client.get("/explain/right_cp_baer")
        assert r.status_code == 200
        body = r.json()
        assert body["flag"] == "right_cp_baer"
        assert "idempotent" in body["definition"]

    def test_unknown_404(self, client):
        r = client.get("/explain/bogus")
        assert r.status_code == 404
