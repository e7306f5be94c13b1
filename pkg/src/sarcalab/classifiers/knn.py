"""K-nearest-neighbor classifier with cosine distance."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .base import ClassifierError, TrainedModel, as_csr


class KnnModel(TrainedModel):
    algorithm = "knn"

    def __init__(self, X_train: sp.csr_matrix, y_train: np.ndarray, k: int):
        self.X_train = X_train.tocsr()
        self.y_train = np.asarray(y_train, dtype=int)
        self.k = int(k)
        self.dimension = X_train.shape[1]

    @classmethod
    def fit(cls, X, y, k=5) -> "KnnModel":
        if k < 1:
            raise ClassifierError(f"k_neighbors must be >= 1, got {k}")
        X = as_csr(X)
        return cls(X, y, min(k, X.shape[0]))

    def _cosine_distances(self, X: sp.csr_matrix) -> np.ndarray:
        train_norms = np.sqrt(np.asarray(self.X_train.multiply(self.X_train).sum(axis=1)).ravel())
        query_norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
        dots = np.asarray((X @ self.X_train.T).todense())
        denom = np.outer(query_norms, train_norms)
        with np.errstate(invalid="ignore", divide="ignore"):
            cos = np.where(denom > 0, dots / np.where(denom > 0, denom, 1.0), 0.0)
        return 1.0 - cos

    def predict_proba(self, X) -> np.ndarray:
        X = self.check_dimension(as_csr(X))
        dist = self._cosine_distances(X)
        out = np.empty((X.shape[0], 2))
        for i in range(X.shape[0]):
            # stable sort breaks distance ties toward the lowest training index
            nearest = np.argsort(dist[i], kind="stable")[: self.k]
            ones = float((self.y_train[nearest] == 1).sum())
            out[i] = ((self.k - ones) / self.k, ones / self.k)
        return out

    def to_payload(self) -> dict:
        coo = self.X_train.tocoo()
        return {
            "dimension": self.dimension,
            "k": self.k,
            "n_train": self.X_train.shape[0],
            "rows": coo.row.tolist(),
            "cols": coo.col.tolist(),
            "data": coo.data.tolist(),
            "labels": self.y_train.tolist(),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "KnnModel":
        X = sp.coo_matrix(
            (payload["data"], (payload["rows"], payload["cols"])),
            shape=(payload["n_train"], payload["dimension"]),
        ).tocsr()
        return cls(X, np.array(payload["labels"]), payload["k"])
