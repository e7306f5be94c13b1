"""HTTP service exposing loaded models for prediction and explanation.

Routes: GET /health, GET /models, POST /predict, POST /explain,
GET /metrics/{run_id}. The service never mutates loaded models; /predict
and /explain are side-effect-free. /predict speaks the same wire shape as
the black-box endpoint protocol, so one sarcalab service can back another
instance's --endpoint."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import lime
from .blackbox import EndpointError, ModelEndpoint, healthcheck, remote_predict_proba
from .pipeline import TextClassifier


class PredictRequest(BaseModel):
    texts: list[str] = Field(min_length=1)
    model_id: str | None = None


class ExplainRequest(BaseModel):
    text: str
    model_id: str | None = None
    n_samples: int | None = None
    kernel_width: float | None = None
    ridge_lambda: float | None = None
    top_k: int | None = None
    seed: int | None = None
    target_class: int | str | None = None


def create_app(
    models: dict[str, TextClassifier | ModelEndpoint],
    runs_dir: str | None = None,
    default_seed: int = 0,
) -> FastAPI:
    if not models:
        raise ValueError("at least one model or endpoint is required")
    app = FastAPI(title="sarcalab")
    default_id = next(iter(models))

    def resolve(model_id: str | None):
        mid = model_id or default_id
        if mid not in models:
            raise HTTPException(404, f"unknown model_id {mid!r}")
        return mid, models[mid]

    def describe(mid: str) -> dict:
        m = models[mid]
        if isinstance(m, ModelEndpoint):
            return {"model_id": mid, "type": "endpoint", "base_url": m.base_url}
        return {"model_id": mid, "type": "native", "algorithm": m.model.algorithm}

    @app.get("/health")
    def health():
        return {"status": "ok", "model_id": default_id, "n_classes": 2}

    @app.get("/models")
    def list_models():
        return {"models": [describe(mid) for mid in models]}

    @app.post("/predict")
    def predict(req: PredictRequest):
        if any(not t.strip() for t in req.texts):
            raise HTTPException(422, "texts must be non-empty")
        mid, model = resolve(req.model_id)
        try:
            if isinstance(model, ModelEndpoint):
                probs = remote_predict_proba(model, req.texts)
            else:
                probs = model.predict_proba_texts(req.texts)
        except EndpointError as e:
            raise HTTPException(502, str(e)) from e
        return {
            "probs": probs.tolist(),
            "model_id": mid,
            "seed": default_seed,
        }

    @app.post("/explain")
    def explain(req: ExplainRequest):
        if not req.text.strip():
            raise HTTPException(422, "text must be non-empty")
        mid, model = resolve(req.model_id)
        overrides = {
            k: v
            for k, v in {
                "n_samples": req.n_samples,
                "kernel_width": req.kernel_width,
                "ridge_lambda": req.ridge_lambda,
                "top_k": req.top_k,
                "seed": req.seed,
                "target_class": req.target_class,
            }.items()
            if v is not None
        }
        overrides.setdefault("seed", default_seed)
        try:
            cfg = lime.LimeConfig(**overrides)
        except lime.LimeError as e:
            raise HTTPException(422, str(e)) from e
        pre_cfg = model.pre_cfg if isinstance(model, TextClassifier) else None
        try:
            exp = lime.explain(req.text, model, pre_cfg, cfg)
        except lime.LimeError as e:
            raise HTTPException(422, str(e)) from e
        except EndpointError as e:
            raise HTTPException(502, str(e)) from e
        body = exp.to_dict()
        body["html"] = exp.to_html()
        body["model_id"] = mid
        body["seed"] = cfg.seed
        return body

    @app.get("/metrics/{run_id}")
    def run_metrics(run_id: str):
        if runs_dir is None:
            raise HTTPException(404, "no runs directory configured")
        path = Path(runs_dir) / run_id / "report.json"
        if not path.exists() or not path.resolve().is_relative_to(Path(runs_dir).resolve()):
            raise HTTPException(404, f"unknown run {run_id!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    return app
