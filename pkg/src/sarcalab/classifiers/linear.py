"""Linear models: logistic regression (full-batch GD), Pegasos-style linear
SVM, and a per-sample SGD classifier with hinge or log loss."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .base import ClassifierError, TrainedModel, as_csr, sigmoid


def logistic_loss_grad(weights, bias, X, y, l2=0.0):
    """Mean log-loss with L2 penalty on the weights, and its gradient.

    Returns (loss, grad_w, grad_b). Kept separate from training so the
    analytic gradient can be checked against finite differences.
    """
    X = as_csr(X)
    y = np.asarray(y, dtype=float)
    n = X.shape[0]
    z = X @ weights + bias
    p = sigmoid(z)
    eps = 1e-12
    loss = -np.mean(y * np.log(p + eps) + (1 - y) * np.log(1 - p + eps))
    loss += 0.5 * l2 * float(weights @ weights)
    residual = p - y
    grad_w = X.T @ residual / n + l2 * weights
    grad_b = float(np.mean(residual))
    return float(loss), grad_w, grad_b


class LinearBinaryModel(TrainedModel):
    """Weight vector + bias; subclasses differ in training and calibration."""

    def __init__(self, weights: np.ndarray, bias: float, dimension: int):
        self.weights = np.asarray(weights, dtype=float)
        self.bias = float(bias)
        self.dimension = dimension

    def margin(self, X) -> np.ndarray:
        X = self.check_dimension(as_csr(X))
        return X @ self.weights + self.bias

    def predict_proba(self, X) -> np.ndarray:
        p1 = sigmoid(self.margin(X))
        return np.column_stack([1.0 - p1, p1])

    def to_payload(self) -> dict:
        return {
            "dimension": self.dimension,
            "weights": self.weights.tolist(),
            "bias": self.bias,
        }

    @classmethod
    def from_payload(cls, payload: dict):
        return cls(np.array(payload["weights"]), payload["bias"], payload["dimension"])


class LogisticRegressionModel(LinearBinaryModel):
    algorithm = "logistic_regression"

    @classmethod
    def fit(cls, X, y, learning_rate=0.1, epochs=200, l2=0.0) -> "LogisticRegressionModel":
        X = as_csr(X)
        y = np.asarray(y, dtype=float)
        w = np.zeros(X.shape[1])
        b = 0.0
        for _ in range(epochs):
            _, gw, gb = logistic_loss_grad(w, b, X, y, l2)
            w -= learning_rate * gw
            b -= learning_rate * gb
        return cls(w, b, X.shape[1])


class LinearSvmModel(LinearBinaryModel):
    algorithm = "linear_svm"

    @classmethod
    def fit(cls, X, y, l2=1e-4, epochs=20, seed=0) -> "LinearSvmModel":
        """Pegasos: step 1/(lambda*t) on the hinge loss, bias unregularized."""
        X = as_csr(X)
        ypm = np.where(np.asarray(y) == 1, 1.0, -1.0)
        n, dim = X.shape
        w = np.zeros(dim)
        b = 0.0
        rng = np.random.default_rng(seed)
        t = 0
        for _ in range(epochs):
            for i in rng.permutation(n):
                t += 1
                eta = 1.0 / (l2 * t)
                row = X.getrow(i)
                margin = ypm[i] * (row @ w + b)[0]
                w *= 1.0 - eta * l2
                if margin < 1.0:
                    w[row.indices] += eta * ypm[i] * row.data
                    b += eta * ypm[i]
        return cls(w, b, dim)


class SgdClassifierModel(LinearBinaryModel):
    algorithm = "sgd"

    @classmethod
    def fit(cls, X, y, learning_rate=0.01, epochs=10, l2=1e-4, loss="hinge",
            seed=0) -> "SgdClassifierModel":
        if loss not in ("hinge", "log"):
            raise ClassifierError(f"unknown loss {loss!r}")
        X = as_csr(X)
        y01 = np.asarray(y, dtype=float)
        ypm = np.where(y01 == 1, 1.0, -1.0)
        n, dim = X.shape
        w = np.zeros(dim)
        b = 0.0
        rng = np.random.default_rng(seed)
        for _ in range(epochs):
            for i in rng.permutation(n):
                row = X.getrow(i)
                z = (row @ w + b)[0]
                w *= 1.0 - learning_rate * l2
                if loss == "hinge":
                    if ypm[i] * z < 1.0:
                        w[row.indices] += learning_rate * ypm[i] * row.data
                        b += learning_rate * ypm[i]
                else:
                    residual = float(sigmoid(z)) - y01[i]
                    w[row.indices] -= learning_rate * residual * row.data
                    b -= learning_rate * residual
        return cls(w, b, dim)
