import json

import pytest
from fastapi.testclient import TestClient

from divlat import corpus
from divlat.service import schemas as S
from divlat.service.app import create_app


@pytest.fixture(scope="session")
def client():
    return TestClient(create_app(), raise_server_exceptions=True)


class TestMeta:
    def test_healthz(self, client):
        r = client.get("/healthz")
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "ok" and "version" in body

    def test_corpus_list(self, client):
        r = client.get("/v1/corpus")
        assert r.status_code == 200
        assert tuple(r.json()["names"]) == corpus.corpus_names()

    def test_corpus_show(self, client):
        r = client.get("/v1/corpus/l2_surface")
        assert r.status_code == 200
        data = r.json()
        assert data["kind"] == "lattice" and data["primes"] == ["C1", "C2"]

    def test_corpus_show_unknown(self, client):
        r = client.get("/v1/corpus/zzz")
        assert r.status_code == 422
        body = r.json()["error"]
        assert body["code"] == "E_MISSING"
        assert "l2_surface" in body["message"]


class TestHappyPaths:
    def test_intersect(self, client):
        r = client.post("/v1/intersect", json={
            "model": "corpus:l2_surface", "a": "C1", "b": "C2",
        })
        assert r.status_code == 200
        assert r.json()["product"] == "4/3"

    def test_connectivity_frozen(self, client):
        r = client.post("/v1/connectivity", json={
            "model": "corpus:l3_surface",
            "divisor": "2C'1 + 2C'2 + 2C'3",
        })
        assert r.status_code == 200
        body = S.ConnectivityResponse.model_validate(r.json())
        assert body.chain_connected is True
        assert [s.prime for s in body.chain.steps] == ["C'2", "C'3", "C'1", "C'2", "C'3"]
        assert [s.pairing for s in body.chain.steps] == [1, 2, 1, 1, 1]
        assert body.numerical.holds is False
        assert body.numerical.minimum == 0
        assert body.numerical.witness.product == 0

    def test_zariski_frozen(self, client):
        r = client.post("/v1/zariski", json={
            "model": "corpus:l3_surface", "divisor": "C'1 + C'2 + C'3",
        })
        assert r.status_code == 200
        body = S.ZariskiResponse.model_validate(r.json())
        assert body.positive.coeffs == {"C'1": 1, "C'2": "4/5", "C'3": "3/5"}
        assert body.negative.coeffs == {"C'2": "1/5", "C'3": "2/5"}
        assert body.nef_square == "2/5"
        assert body.big is True

    def test_pullback(self, client):
        r = client.post("/v1/pullback", json={
            "resolution": "corpus:elliptic_resolution", "divisor": "C1",
        })
        assert r.status_code == 200
        assert r.json()["result"]["expr"] == "C'1 + 1/3 C'3"

    def test_delta_default_cycle(self, client):
        r = client.post("/v1/delta", json={"resolution": "corpus:duval_a1"})
        assert r.status_code == 200
        body = S.DeltaResponse.model_validate(r.json())
        assert body.delta == 2
        assert body.default_cycle_used is True
        assert body.singclass == "duval"

    def test_fujita_without_question_returns_both_reports(self, client):
        r = client.post("/v1/fujita", json={
            "m": 3, "hsq": 2, "dims": {"dimD": 20, "h1n": 0},
        })
        assert r.status_code == 200
        reports = S.ReportsResponse.model_validate(r.json()).reports
        assert len(reports) == 2
        assert {rep.criterion for rep in reports} == {
            "fujita-adjoint-bpf", "fujita-adjoint-va",
        }
        assert all(rep.verdict == "holds" for rep in reports)

    def test_frobenius(self, client):
        r = client.post("/v1/frobenius", json={
            "matrix": [[0, 1], [0, 0]], "p": 2,
        })
        assert r.status_code == 200
        body = S.FrobeniusResponse.model_validate(r.json())
        assert (body.dim_semisimple, body.dim_nilpotent) == (0, 2)

    def test_inline_lattice_model(self, client):
        inline = {
            "kind": "lattice",
            "name": "inline",
            "primes": ["A", "B"],
            "matrix": [[0, 2], [2, 0]],
        }
        r = client.post("/v1/connectivity", json={
            "model": inline, "divisor": "A + B",
        })
        assert r.status_code == 200
        assert r.json()["chain_connected"] is True

    def test_check_model(self, client):
        r = client.post("/v1/check-model", json={
            "model": "corpus:l3_surface",
            "resolution": "corpus:duval_d4",
            "dualgraph": "corpus:triangle",
        })
        assert r.status_code == 200
        kinds = [s["kind"] for s in r.json()["summaries"]]
        assert kinds == ["lattice", "resolution", "dualgraph"]


class TestErrorMapping:
    def test_parse_error_shape(self, client):
        r = client.post("/v1/connectivity", json={
            "model": "corpus:l3_surface", "divisor": "2C'1 + ?",
        })
        assert r.status_code == 422
        err = r.json()["error"]
        assert err["code"] == "E_PARSE"
        assert err["details"]["position"] == 8

    def test_budget_error_is_429(self, client):
        r = client.post("/v1/connectivity", json={
            "model": "corpus:l3_surface",
            "divisor": "2C'1 + 2C'2 + 2C'3",
            "budget": 5,
        })
        assert r.status_code == 429
        err = r.json()["error"]
        assert err["code"] == "E_BUDGET"
        assert err["details"]["allowed"] == 5
        assert err["details"]["required"] > 5

    def test_validation_error_uniform_shape(self, client):
        r = client.post("/v1/mu", json={"x": 5})
        assert r.status_code == 422
        err = r.json()["error"]
        assert err["code"] == "E_INPUT"
        assert err["message"].startswith("d:")

    def test_unknown_field_rejected(self, client):
        r = client.post("/v1/mu", json={"x": 5, "d": 5, "zz": 1})
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "E_INPUT"

    def test_path_model_refs_rejected(self, client):
        r = client.post("/v1/connectivity", json={
            "model": "somewhere/file.json", "divisor": "A",
        })
        assert r.status_code == 422
        err = r.json()["error"]
        assert err["code"] == "E_INPUT"
        assert "corpus:NAME" in err["message"]

    def test_non_integral_mu_argument(self, client):
        r = client.post("/v1/mu", json={"x": "1/0", "d": 3})
        assert r.status_code == 422
        assert r.json()["error"]["code"] == "E_LATTICE"


class TestResponseDiscipline:
    def test_rationals_never_floats(self, client):
        r = client.post("/v1/zariski", json={
            "model": "corpus:l3_surface", "divisor": "C'1 + C'2 + C'3",
        })
        # raw body text must not contain JSON floats
        raw = r.text
        body = json.loads(raw)

        def walk(v):
            assert not isinstance(v, float), f"float leaked: {v!r}"
            if isinstance(v, dict):
                for x in v.values():
                    walk(x)
            elif isinstance(v, list):
                for x in v:
                    walk(x)

        walk(body)

    def test_mu_value(self, client):
        r = client.post("/v1/mu", json={"x": 5, "d": 5})
        assert r.json() == {"value": 20}
        r = client.post("/v1/mu", json={"x": "1/3", "d": 1})
        assert r.json() == {"value": "16/3"}

    def test_qmin_roundtrip(self, client):
        r = client.post("/v1/qmin", json={"model": "corpus:l2_surface", "box": 4})
        body = S.QMinResponse.model_validate(r.json())
        assert body.found and body.value == "1/3"
        assert body.witness.expr == "C1 + C2"
        assert body.searched == 25

    def test_reider_report_reparses(self, client):
        r = client.post("/v1/reider", json={
            "model": "corpus:l2_surface",
            "divisor": "4C1 + 4C2",
            "delta": "4/3",
            "cluster": {"meets": ["C1", "C2"]},
        })
        assert r.status_code == 200
        rep = S.ReportResponse.model_validate(r.json()).report
        assert rep.verdict == "inconclusive"
        assert len(rep.witnesses) == 2
        assert {w.product for w in rep.witnesses} == {"1/3"}
