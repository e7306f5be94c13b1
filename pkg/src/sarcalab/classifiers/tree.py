"""Decision tree (Gini) and random forest built on the split-search kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .. import kernels
from .base import ClassifierError, TrainedModel, as_csr


@dataclass
class TreeNode:
    # leaf: proba set, children None; internal: feature/threshold set
    proba: tuple[float, float] | None = None
    feature: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.proba is not None

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"proba": list(self.proba)}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @staticmethod
    def from_dict(d: dict) -> "TreeNode":
        if "proba" in d:
            return TreeNode(proba=tuple(d["proba"]))
        return TreeNode(
            feature=d["feature"],
            threshold=d["threshold"],
            left=TreeNode.from_dict(d["left"]),
            right=TreeNode.from_dict(d["right"]),
        )


def _leaf(y: np.ndarray) -> TreeNode:
    n = y.shape[0]
    ones = int(y.sum())
    return TreeNode(proba=((n - ones) / n, ones / n))


def _build(
    X: sp.csr_matrix,
    y: np.ndarray,
    indices: np.ndarray,
    depth: int,
    max_depth: int | None,
    min_samples_split: int,
    n_candidate_features: int | None,
    rng: np.random.Generator | None,
) -> TreeNode:
    sub_y = y[indices]
    if (
        sub_y.min() == sub_y.max()
        or indices.shape[0] < min_samples_split
        or (max_depth is not None and depth >= max_depth)
    ):
        return _leaf(sub_y)

    sub = X[indices].tocsc()
    n_features = X.shape[1]
    if n_candidate_features is None or n_candidate_features >= n_features:
        candidates = np.arange(n_features)
    else:
        candidates = np.sort(
            rng.choice(n_features, size=n_candidate_features, replace=False)
        )

    best_cost = math.inf
    best_feature = -1
    best_threshold = 0.0
    for f in candidates:
        col = np.asarray(sub[:, int(f)].todense()).ravel()
        order = np.argsort(col, kind="stable")
        threshold, cost = kernels.scan_split(
            np.ascontiguousarray(col[order]),
            np.ascontiguousarray(sub_y[order].astype(np.int64)),
        )
        if cost < best_cost:
            best_cost = cost
            best_feature = int(f)
            best_threshold = threshold

    if best_feature < 0:
        # no feature separates the node's samples
        return _leaf(sub_y)

    col = np.asarray(sub[:, best_feature].todense()).ravel()
    go_left = col <= best_threshold
    left = _build(
        X, y, indices[go_left], depth + 1, max_depth, min_samples_split,
        n_candidate_features, rng,
    )
    right = _build(
        X, y, indices[~go_left], depth + 1, max_depth, min_samples_split,
        n_candidate_features, rng,
    )
    return TreeNode(feature=best_feature, threshold=best_threshold, left=left, right=right)


def _resolve_subsample(feature_subsample, n_features: int) -> int | None:
    if feature_subsample in (None, "all"):
        return None
    if feature_subsample == "sqrt":
        return max(1, int(math.sqrt(n_features)))
    m = int(feature_subsample)
    if m < 1:
        raise ClassifierError(f"feature subsample must be >= 1, got {m}")
    return min(m, n_features)


class DecisionTreeModel(TrainedModel):
    algorithm = "decision_tree"

    def __init__(self, root: TreeNode, dimension: int):
        self.root = root
        self.dimension = dimension

    @classmethod
    def fit(cls, X, y, max_depth=None, min_samples_split=2,
            feature_subsample=None, rng=None) -> "DecisionTreeModel":
        X = as_csr(X)
        y = np.asarray(y, dtype=np.int64)
        m = _resolve_subsample(feature_subsample, X.shape[1])
        root = _build(
            X, y, np.arange(X.shape[0]), 0, max_depth, min_samples_split, m, rng
        )
        return cls(root, X.shape[1])

    def _row_proba(self, row: dict) -> tuple[float, float]:
        node = self.root
        while not node.is_leaf:
            value = row.get(node.feature, 0.0)
            node = node.left if value <= node.threshold else node.right
        return node.proba

    def predict_proba(self, X) -> np.ndarray:
        X = self.check_dimension(as_csr(X))
        out = np.empty((X.shape[0], 2))
        for i in range(X.shape[0]):
            start, end = X.indptr[i], X.indptr[i + 1]
            row = dict(zip(X.indices[start:end], X.data[start:end]))
            out[i] = self._row_proba(row)
        return out

    def to_payload(self) -> dict:
        return {"dimension": self.dimension, "root": self.root.to_dict()}

    @classmethod
    def from_payload(cls, payload: dict) -> "DecisionTreeModel":
        return cls(TreeNode.from_dict(payload["root"]), payload["dimension"])


class RandomForestModel(TrainedModel):
    algorithm = "random_forest"

    def __init__(self, trees: list[DecisionTreeModel], dimension: int):
        self.trees = trees
        self.dimension = dimension

    @classmethod
    def fit(cls, X, y, n_trees=100, max_depth=None, min_samples_split=2,
            feature_subsample="sqrt", bootstrap=True, seed=0) -> "RandomForestModel":
        X = as_csr(X)
        y = np.asarray(y, dtype=np.int64)
        n = X.shape[0]
        trees = []
        for t in range(n_trees):
            # per-tree stream keyed on (seed, t) so parallel builds would
            # match the sequential run
            rng = np.random.default_rng([seed, t])
            if bootstrap:
                idx = rng.integers(0, n, size=n)
                # a bootstrap draw can miss one class entirely; redraw
                while y[idx].min() == y[idx].max():
                    idx = rng.integers(0, n, size=n)
                Xt, yt = X[idx], y[idx]
            else:
                Xt, yt = X, y
            tree = DecisionTreeModel.fit(
                Xt, yt, max_depth=max_depth, min_samples_split=min_samples_split,
                feature_subsample=feature_subsample, rng=rng,
            )
            trees.append(tree)
        return cls(trees, X.shape[1])

    def predict_proba(self, X) -> np.ndarray:
        X = self.check_dimension(as_csr(X))
        votes = np.zeros((X.shape[0], 2))
        for tree in self.trees:
            preds = tree.predict(X)
            votes[np.arange(X.shape[0]), preds] += 1.0
        return votes / len(self.trees)

    def to_payload(self) -> dict:
        return {
            "dimension": self.dimension,
            "trees": [t.root.to_dict() for t in self.trees],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "RandomForestModel":
        dim = payload["dimension"]
        trees = [DecisionTreeModel(TreeNode.from_dict(d), dim) for d in payload["trees"]]
        return cls(trees, dim)
