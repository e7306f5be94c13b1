"""Multinomial naive Bayes with Laplace (additive) smoothing."""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .base import ClassifierError, TrainedModel, as_csr


class MultinomialNBModel(TrainedModel):
    algorithm = "multinomial_nb"

    def __init__(self, log_priors, feature_log_prob, dimension: int):
        # feature_log_prob has shape (2, dimension)
        self.log_priors = np.asarray(log_priors, dtype=float)
        self.feature_log_prob = np.asarray(feature_log_prob, dtype=float)
        self.dimension = dimension

    @classmethod
    def fit(cls, X, y, alpha=1.0) -> "MultinomialNBModel":
        if alpha <= 0:
            raise ClassifierError(f"smoothing alpha must be > 0, got {alpha}")
        X = as_csr(X)
        if X.data.size and X.data.min() < 0:
            raise ClassifierError("multinomial NB requires non-negative features")
        y = np.asarray(y, dtype=int)
        n, dim = X.shape
        log_priors = np.empty(2)
        feature_log_prob = np.empty((2, dim))
        for c in (0, 1):
            mask = y == c
            log_priors[c] = np.log(mask.sum() / n)
            counts = np.asarray(X[mask].sum(axis=0)).ravel()
            smoothed = counts + alpha
            feature_log_prob[c] = np.log(smoothed) - np.log(smoothed.sum())
        return cls(log_priors, feature_log_prob, dim)

    def predict_proba(self, X) -> np.ndarray:
        X = self.check_dimension(as_csr(X))
        joint = X @ self.feature_log_prob.T + self.log_priors
        return np.exp(joint - logsumexp(joint, axis=1, keepdims=True))

    def to_payload(self) -> dict:
        return {
            "dimension": self.dimension,
            "log_priors": self.log_priors.tolist(),
            "feature_log_prob": self.feature_log_prob.tolist(),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "MultinomialNBModel":
        return cls(
            payload["log_priors"], payload["feature_log_prob"], payload["dimension"]
        )
