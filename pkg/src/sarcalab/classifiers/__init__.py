"""Seven classical binary classifiers behind one train/predict interface."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .base import ClassifierError, TrainedModel, as_csr, check_training_inputs, sigmoid
from .knn import KnnModel
from .linear import (
    LinearSvmModel,
    LogisticRegressionModel,
    SgdClassifierModel,
    logistic_loss_grad,
)
from .nb import MultinomialNBModel
from .tree import DecisionTreeModel, RandomForestModel

MODEL_FORMAT_VERSION = 1

ALGORITHMS = (
    "random_forest",
    "decision_tree",
    "knn",
    "linear_svm",
    "multinomial_nb",
    "logistic_regression",
    "sgd",
)

_MODEL_CLASSES = {
    "random_forest": RandomForestModel,
    "decision_tree": DecisionTreeModel,
    "knn": KnnModel,
    "linear_svm": LinearSvmModel,
    "multinomial_nb": MultinomialNBModel,
    "logistic_regression": LogisticRegressionModel,
    "sgd": SgdClassifierModel,
}

# per-algorithm defaults; the paper reports none, so these follow common
# library conventions
_DEFAULTS = {
    "random_forest": {"trees": 100, "feature_subsample": "sqrt", "bootstrap": True},
    "linear_svm": {"regularization": 1e-4, "epochs": 20},
    "logistic_regression": {"learning_rate": 0.1, "epochs": 200, "regularization": 0.0},
    "sgd": {"learning_rate": 0.01, "epochs": 10, "regularization": 1e-4, "loss": "hinge"},
}


@dataclass(frozen=True)
class Hyperparams:
    algorithm: str
    seed: int = 0
    trees: int | None = None
    max_depth: int | None = None
    min_samples_split: int = 2
    feature_subsample: object = None
    bootstrap: bool | None = None
    k_neighbors: int = 5
    learning_rate: float | None = None
    epochs: int | None = None
    regularization: float | None = None
    smoothing: float = 1.0
    loss: str | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ClassifierError(f"unknown algorithm {self.algorithm!r}")
        for name in ("trees", "k_neighbors", "learning_rate", "epochs", "smoothing"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ClassifierError(f"{name} must be strictly positive, got {v}")
        if self.regularization is not None and self.regularization < 0:
            raise ClassifierError("regularization must be >= 0")
        if self.max_depth is not None and self.max_depth < 1:
            raise ClassifierError("max_depth must be >= 1")

    def resolved(self, name):
        v = getattr(self, name, None)
        if v is not None:
            return v
        return _DEFAULTS.get(self.algorithm, {}).get(name)


def train(X, y, hp: Hyperparams) -> TrainedModel:
    """Fit the algorithm named by hp on TF-IDF vectors X and labels y.
    Deterministic for a fixed (X, y, hp)."""
    X = as_csr(X)
    y = np.asarray(y, dtype=np.int64)
    check_training_inputs(X, y)

    a = hp.algorithm
    if a == "random_forest":
        return RandomForestModel.fit(
            X, y,
            n_trees=hp.resolved("trees"),
            max_depth=hp.max_depth,
            min_samples_split=hp.min_samples_split,
            feature_subsample=hp.resolved("feature_subsample"),
            bootstrap=hp.resolved("bootstrap"),
            seed=hp.seed,
        )
    if a == "decision_tree":
        return DecisionTreeModel.fit(
            X, y, max_depth=hp.max_depth, min_samples_split=hp.min_samples_split
        )
    if a == "knn":
        return KnnModel.fit(X, y, k=hp.k_neighbors)
    if a == "linear_svm":
        return LinearSvmModel.fit(
            X, y, l2=hp.resolved("regularization"), epochs=hp.resolved("epochs"),
            seed=hp.seed,
        )
    if a == "multinomial_nb":
        return MultinomialNBModel.fit(X, y, alpha=hp.smoothing)
    if a == "logistic_regression":
        return LogisticRegressionModel.fit(
            X, y,
            learning_rate=hp.resolved("learning_rate"),
            epochs=hp.resolved("epochs"),
            l2=hp.resolved("regularization"),
        )
    if a == "sgd":
        return SgdClassifierModel.fit(
            X, y,
            learning_rate=hp.resolved("learning_rate"),
            epochs=hp.resolved("epochs"),
            l2=hp.resolved("regularization"),
            loss=hp.loss or "hinge",
            seed=hp.seed,
        )
    raise ClassifierError(f"unknown algorithm {a!r}")


def predict(model: TrainedModel, X) -> np.ndarray:
    return model.predict(X)


def predict_proba(model: TrainedModel, X) -> np.ndarray:
    return model.predict_proba(X)


def save_model(model: TrainedModel, path) -> None:
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "algorithm": model.algorithm,
        "model": model.to_payload(),
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")


def load_model(path) -> TrainedModel:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if raw.get("format_version") != MODEL_FORMAT_VERSION:
        raise ClassifierError(f"unsupported model format {raw.get('format_version')}")
    cls = _MODEL_CLASSES.get(raw.get("algorithm"))
    if cls is None:
        raise ClassifierError(f"unknown algorithm {raw.get('algorithm')!r}")
    return cls.from_payload(raw["model"])


__all__ = [
    "ALGORITHMS",
    "ClassifierError",
    "Hyperparams",
    "TrainedModel",
    "train",
    "predict",
    "predict_proba",
    "save_model",
    "load_model",
    "logistic_loss_grad",
    "sigmoid",
]
