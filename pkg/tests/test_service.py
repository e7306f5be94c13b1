import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from sarcalab.blackbox import ModelEndpoint
from sarcalab.classifiers import Hyperparams
from sarcalab.pipeline import train_text_classifier
from sarcalab.preprocess import PipelineConfig
from sarcalab.service import create_app

from conftest import MockEndpointServer


@pytest.fixture(scope="module")
def native_model():
    rng = np.random.default_rng(0)
    fillers = ["valo", "khela", "gaan", "kotha"]
    texts, labels = [], []
    for i in range(40):
        words = list(rng.choice(fillers, size=3))
        if i % 2:
            words.append("obviously")
        texts.append(" ".join(words))
        labels.append(i % 2)
    return train_text_classifier(
        texts, labels, Hyperparams("multinomial_nb"),
        pre_cfg=PipelineConfig(), model_id="nb",
    )


@pytest.fixture
def client(native_model, tmp_path):
    run_dir = tmp_path / "runs" / "r1"
    run_dir.mkdir(parents=True)
    (run_dir / "report.json").write_text(json.dumps({"roc_auc": 0.9}))
    app = create_app({"nb": native_model}, runs_dir=str(tmp_path / "runs"), default_seed=5)
    return TestClient(app)


class TestRoutes:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body["n_classes"] == 2
        assert body["model_id"] == "nb"

    def test_models(self, client):
        body = client.get("/models").json()
        assert body["models"] == [
            {"model_id": "nb", "type": "native", "algorithm": "multinomial_nb"}
        ]

    def test_predict_contract(self, client):
        body = client.post("/predict", json={"texts": ["obviously valo"]}).json()
        assert body["model_id"] == "nb"
        assert body["seed"] == 5
        assert len(body["probs"]) == 1
        assert sum(body["probs"][0]) == pytest.approx(1.0, abs=1e-9)

    def test_predict_empty_text_422(self, client):
        assert client.post("/predict", json={"texts": [" "]}).status_code == 422
        assert client.post("/predict", json={"texts": []}).status_code == 422

    def test_unknown_model_404(self, client):
        resp = client.post("/predict", json={"texts": ["x"], "model_id": "nope"})
        assert resp.status_code == 404

    def test_explain_contract(self, client):
        resp = client.post(
            "/explain",
            json={"text": "obviously valo khela", "n_samples": 50, "seed": 1},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["tokens"]) == len(body["weights"])
        assert body["model_id"] == "nb"
        assert "<span" in body["html"]

    def test_explain_empty_text_422(self, client):
        resp = client.post("/explain", json={"text": "   "})
        assert resp.status_code == 422

    def test_explain_is_deterministic(self, client):
        req = {"text": "obviously valo khela", "n_samples": 60, "seed": 3}
        a = client.post("/explain", json=req).json()
        b = client.post("/explain", json=req).json()
        assert a == b

    def test_metrics_route(self, client):
        assert client.get("/metrics/r1").json() == {"roc_auc": 0.9}
        assert client.get("/metrics/zz").status_code == 404


class TestEndpointProxy:
    def test_remote_model_served(self, native_model, mock_server):
        srv = mock_server(MockEndpointServer.marker("darun"))
        app = create_app(
            {"nb": native_model, "remote": ModelEndpoint(base_url=srv.url)}
        )
        client = TestClient(app)
        body = client.post(
            "/predict", json={"texts": ["eta darun"], "model_id": "remote"}
        ).json()
        assert body["probs"][0][1] == pytest.approx(0.9)

    def test_downed_endpoint_is_502(self, native_model):
        dead = ModelEndpoint(base_url="http://127.0.0.1:1", timeout_ms=300)
        app = create_app({"nb": native_model, "remote": dead})
        client = TestClient(app)
        resp = client.post("/predict", json={"texts": ["x"], "model_id": "remote"})
        assert resp.status_code == 502

    def test_empty_model_map_rejected(self):
        with pytest.raises(ValueError):
            create_app({})
