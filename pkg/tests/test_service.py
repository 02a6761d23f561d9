"""HTTP service endpoints exercised through the in-process test client."""

import pytest
from fastapi.testclient import TestClient

from adderkit.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def ling4_doc(client):
    resp = client.post("/build", json={"family": "ling4"})
    assert resp.status_code == 200
    return resp.json()


class TestBuild:
    def test_doc_shape(self, ling4_doc):
        assert ling4_doc["family"] == "ling4"
        assert ling4_doc["width"] == 4 and ling4_doc["cin"] is False
        assert {f"H[{i}]" for i in range(4)} <= set(ling4_doc["taps"])
        assert all("in" in node for node in ling4_doc["nodes"])
        assert len(ling4_doc["outputs"]["s"]) == 4

    def test_grouped(self, client):
        resp = client.post(
            "/build", json={"family": "ling-grouped", "width": 16, "group_size": 4}
        )
        assert resp.status_code == 200
        assert resp.json()["group_size"] == 4

    def test_domain_error_is_400(self, client):
        resp = client.post("/build", json={"family": "ling-flat", "width": 40})
        assert resp.status_code == 400
        assert "capped" in resp.json()["detail"]

    def test_validation_error_is_422(self, client):
        resp = client.post("/build", json={"family": "carry-select"})
        assert resp.status_code == 422


class TestEval:
    def test_from_document(self, client, ling4_doc):
        resp = client.post("/eval", json={"netlist": ling4_doc, "a": 10, "b": 6})
        assert resp.status_code == 200
        body = resp.json()
        assert body["s"] == 0 and body["cout"] == 1
        assert body["s_binary"] == "0b0000"
        assert body["taps"] is None

    def test_from_spec_with_taps(self, client):
        resp = client.post(
            "/eval", json={"spec": {"family": "ling4"}, "a": 10, "b": 6, "taps": True}
        )
        taps = resp.json()["taps"]
        assert [taps[f"H[{i}]"] for i in range(4)] == [0, 1, 1, 1]

    def test_operand_overflow_is_400(self, client, ling4_doc):
        resp = client.post("/eval", json={"netlist": ling4_doc, "a": 16, "b": 0})
        assert resp.status_code == 400
        assert "exceeds width" in resp.json()["detail"]

    def test_netlist_and_spec_is_422(self, client, ling4_doc):
        resp = client.post(
            "/eval",
            json={"netlist": ling4_doc, "spec": {"family": "rca"}, "a": 0, "b": 0},
        )
        assert resp.status_code == 422

    def test_missing_cin_is_400(self, client):
        resp = client.post(
            "/eval", json={"spec": {"family": "rca", "cin": True}, "a": 1, "b": 1}
        )
        assert resp.status_code == 400


class TestVerify:
    def test_exhaustive_grouped(self, client):
        resp = client.post(
            "/verify",
            json={"spec": {"family": "ling-grouped", "width": 8, "group_size": 4}},
        )
        body = resp.json()
        assert body["vectors_tested"] == 65536
        assert body["failures"] == [] and body["passed"] is True

    def test_random_seeded(self, client):
        req = {
            "spec": {"family": "ling-grouped", "width": 32, "group_size": 8},
            "mode": "random",
            "samples": 2000,
            "seed": 9,
        }
        first = client.post("/verify", json=req).json()
        second = client.post("/verify", json=req).json()
        assert first == second
        assert first["seed"] == 9 and first["passed"]

    def test_failure_entries(self, client, ling4_doc):
        doc = dict(ling4_doc)
        # repoint cout at a fresh constant-0 node: a stuck-at-0 fault
        const_id = len(doc["inputs"]) + len(doc["nodes"])
        doc["nodes"] = doc["nodes"] + [{"id": const_id, "kind": "CONST0", "in": []}]
        doc["outputs"] = {"s": doc["outputs"]["s"], "cout": const_id}
        body = client.post("/verify", json={"netlist": doc}).json()
        assert body["passed"] is False
        assert body["failures"][0] == {
            "a": 15,
            "b": 1,
            "cin": 0,
            "expected": [0, 1],
            "actual": [0, 0],
            "identity": None,
        }

    def test_cap_is_400(self, client):
        resp = client.post(
            "/verify",
            json={"spec": {"family": "ling-grouped", "width": 32, "group_size": 8}},
        )
        assert resp.status_code == 400


class TestCompare:
    def test_markdown_table(self, client):
        resp = client.post(
            "/compare",
            json={"specs": [{"family": "rca"}, {"family": "cla-flat"}, {"family": "ling4"}]},
        )
        table = resp.json()["table"]
        assert table.count("\n") == 5
        assert "| ling4 | 4 | xor |" in table

    def test_empty_specs_is_400_or_422(self, client):
        resp = client.post("/compare", json={"specs": []})
        assert resp.status_code in (400, 422)


class TestExport:
    def test_dot(self, client, ling4_doc):
        resp = client.post("/export", json={"netlist": ling4_doc, "format": "dot"})
        text = resp.json()["text"]
        assert text.startswith("digraph") and "->" in text

    def test_json_round_trip(self, client, ling4_doc):
        resp = client.post("/export", json={"netlist": ling4_doc, "format": "json"})
        assert resp.status_code == 200
        rebuilt = client.post("/eval", json={"netlist": ling4_doc, "a": 3, "b": 5}).json()
        assert rebuilt["s"] == 8


class TestHealth:
    def test_ok(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"
