import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np
import pytest

from sarcalab.corpus import Dataset, LabeledComment
from sarcalab.preprocess import PipelineConfig


@pytest.fixture
def plain_cfg():
    """No stopwords, default emoji ranges."""
    return PipelineConfig()


def make_dataset(n0, n1, seed=0, name="synthetic"):
    """n0 non-sarcastic and n1 sarcastic records with simple marker text."""
    rng = np.random.default_rng(seed)
    fillers = ["valo", "khela", "dekho", "bhai", "gaan", "chobi", "kotha", "mojar"]
    records = []
    for label, count in ((0, n0), (1, n1)):
        for _ in range(count):
            words = list(rng.choice(fillers, size=4))
            if label == 1:
                words.insert(int(rng.integers(0, 5)), "obviously")
            records.append(LabeledComment(" ".join(words), label))
    order = rng.permutation(len(records))
    return Dataset([records[i] for i in order], name)


class _MockHandler(BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def _send(self, code, payload):
        body = json.dumps(payload).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        if self.path == "/health":
            self._send(200, self.server.health_payload)
        else:
            self._send(404, {"error": "not found"})

    def do_POST(self):
        if self.path != "/predict":
            self._send(404, {"error": "not found"})
            return
        length = int(self.headers.get("Content-Length", 0))
        req = json.loads(self.rfile.read(length))
        self.server.request_log.append(req)
        self._send(*self.server.predict_fn(req["texts"]))


class MockEndpointServer:
    """Scripted classifier endpoint for client tests."""

    def __init__(self, predict_fn=None, health=None):
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), _MockHandler)
        self._server.predict_fn = predict_fn or self.constant(0.5)
        self._server.health_payload = health or {"model_id": "mock", "n_classes": 2}
        self._server.request_log = []
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @staticmethod
    def constant(p1):
        def fn(texts):
            return 200, {"probs": [[1 - p1, p1] for _ in texts]}

        return fn

    @staticmethod
    def marker(token, p_with=0.9, p_without=0.1):
        def fn(texts):
            probs = []
            for t in texts:
                p1 = p_with if token in t.split() else p_without
                probs.append([1 - p1, p1])
            return 200, {"probs": probs}

        return fn

    @property
    def url(self):
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    @property
    def requests(self):
        return self._server.request_log

    def close(self):
        self._server.shutdown()
        self._server.server_close()


@pytest.fixture
def mock_server():
    servers = []

    def factory(predict_fn=None, health=None):
        srv = MockEndpointServer(predict_fn, health)
        servers.append(srv)
        return srv

    yield factory
    for srv in servers:
        srv.close()
