"""Shared pieces for the classifier implementations."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..features import SparseVector, stack

CLASSES = (0, 1)


class ClassifierError(ValueError):
    pass


def as_csr(X) -> sp.csr_matrix:
    if sp.issparse(X):
        return X.tocsr()
    if isinstance(X, np.ndarray):
        return sp.csr_matrix(X)
    if X and isinstance(X[0], SparseVector):
        return stack(X)
    return sp.csr_matrix(np.asarray(X, dtype=float))


def check_training_inputs(X: sp.csr_matrix, y: np.ndarray) -> None:
    if X.shape[0] != y.shape[0]:
        raise ClassifierError(f"{X.shape[0]} rows but {y.shape[0]} labels")
    if X.shape[0] < 2:
        raise ClassifierError("need at least 2 training records")
    if not np.isfinite(X.data).all():
        raise ClassifierError("non-finite feature value in training data")
    present = set(np.unique(y))
    if not present <= {0, 1}:
        raise ClassifierError(f"labels outside {{0,1}}: {sorted(present - {0, 1})}")
    if len(present) < 2:
        raise ClassifierError("training set contains a single class")


def sigmoid(z):
    """Overflow-safe logistic function; works on scalars and arrays."""
    z = np.asarray(z, dtype=float)
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


class TrainedModel:
    """Fitted binary classifier. Subclasses set `algorithm` and implement
    predict_proba over a csr matrix."""

    algorithm: str
    dimension: int

    def predict_proba(self, X) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X) -> np.ndarray:
        proba = self.predict_proba(X)
        # tie goes to label 0
        return (proba[:, 1] > proba[:, 0]).astype(int)

    def check_dimension(self, X: sp.csr_matrix) -> sp.csr_matrix:
        if X.shape[1] != self.dimension:
            raise ClassifierError(
                f"expected {self.dimension} features, got {X.shape[1]}"
            )
        return X

    def to_payload(self) -> dict:
        raise NotImplementedError
