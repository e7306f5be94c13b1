import math

import numpy as np
import pytest
import scipy.sparse as sp

from sarcalab import classifiers
from sarcalab.classifiers import (
    ClassifierError,
    Hyperparams,
    load_model,
    logistic_loss_grad,
    save_model,
    train,
)
from sarcalab.classifiers.knn import KnnModel
from sarcalab.classifiers.linear import LogisticRegressionModel
from sarcalab.classifiers.tree import DecisionTreeModel, RandomForestModel, TreeNode

ALGO_HP = {
    "random_forest": Hyperparams("random_forest", trees=15, seed=3),
    "decision_tree": Hyperparams("decision_tree"),
    "knn": Hyperparams("knn", k_neighbors=3),
    "linear_svm": Hyperparams("linear_svm", epochs=40, seed=3),
    "multinomial_nb": Hyperparams("multinomial_nb"),
    "logistic_regression": Hyperparams("logistic_regression"),
    "sgd": Hyperparams("sgd", epochs=30, seed=3),
}


def threshold_data(n=20, seed=0):
    """1-D threshold problem (class 1 iff x > 0.5) lifted to the
    two-column representation [x, 1-x] so every algorithm, including
    multinomial NB, can express the boundary."""
    rng = np.random.default_rng(seed)
    x = np.concatenate([rng.uniform(0.0, 0.45, n // 2), rng.uniform(0.55, 1.0, n // 2)])
    y = (x > 0.5).astype(int)
    X = sp.csr_matrix(np.column_stack([x, 1 - x]))
    return X, y


def random_sparse(n, dim, seed=0, density=0.4):
    rng = np.random.default_rng(seed)
    dense = rng.random((n, dim)) * (rng.random((n, dim)) < density)
    y = rng.integers(0, 2, n)
    if y.min() == y.max():
        y[0] = 1 - y[0]
    return sp.csr_matrix(dense), y


@pytest.mark.parametrize("algo", list(ALGO_HP))
class TestAllAlgorithms:
    def test_separable_training_accuracy(self, algo):
        X, y = threshold_data()
        model = train(X, y, ALGO_HP[algo])
        assert (model.predict(X) == y).all()

    def test_proba_rows_sum_to_one(self, algo):
        X, y = random_sparse(30, 8, seed=4)
        model = train(X, y, ALGO_HP[algo])
        proba = model.predict_proba(X)
        assert proba.shape == (30, 2)
        assert (proba >= 0).all()
        assert np.abs(proba.sum(axis=1) - 1.0).max() < 1e-9

    def test_deterministic_retraining(self, algo):
        X, y = random_sparse(25, 6, seed=7)
        a = train(X, y, ALGO_HP[algo]).predict_proba(X)
        b = train(X, y, ALGO_HP[algo]).predict_proba(X)
        assert (a == b).all()

    def test_single_class_rejected(self, algo):
        X, _ = random_sparse(10, 4)
        with pytest.raises(ClassifierError, match="single class"):
            train(X, np.zeros(10, dtype=int), ALGO_HP[algo])

    def test_dimension_mismatch_rejected(self, algo):
        X, y = random_sparse(20, 5, seed=1)
        model = train(X, y, ALGO_HP[algo])
        bad, _ = random_sparse(4, 7, seed=2)
        with pytest.raises(ClassifierError, match="features"):
            model.predict(bad)

    def test_persistence_round_trip(self, algo, tmp_path):
        X, y = random_sparse(20, 5, seed=9)
        model = train(X, y, ALGO_HP[algo])
        path = tmp_path / "model.json"
        save_model(model, path)
        loaded = load_model(path)
        assert loaded.algorithm == model.algorithm
        assert np.allclose(loaded.predict_proba(X), model.predict_proba(X))


def test_non_finite_feature_rejected():
    X = sp.csr_matrix(np.array([[1.0, np.nan], [0.5, 1.0]]))
    with pytest.raises(ClassifierError, match="finite"):
        train(X, [0, 1], Hyperparams("decision_tree"))


class TestNaiveBayes:
    # hand-applied Laplace smoothing: class 0 doc has counts a=2, class 1
    # doc has counts b=1; alpha=1, V=2
    def setup_method(self):
        X = sp.csr_matrix(np.array([[2.0, 0.0], [0.0, 1.0]]))
        self.model = train(X, [0, 1], Hyperparams("multinomial_nb", smoothing=1.0))

    def test_conditionals(self):
        flp = self.model.feature_log_prob
        assert math.exp(flp[0][0]) == pytest.approx(3 / 4, abs=1e-12)
        assert math.exp(flp[0][1]) == pytest.approx(1 / 4, abs=1e-12)
        assert math.exp(flp[1][0]) == pytest.approx(1 / 3, abs=1e-12)
        assert math.exp(flp[1][1]) == pytest.approx(2 / 3, abs=1e-12)
        assert np.allclose(np.exp(self.model.log_priors), [0.5, 0.5])

    def test_posterior_oracle(self):
        doc = sp.csr_matrix(np.array([[1.0, 0.0]]))
        proba = self.model.predict_proba(doc)
        assert proba[0, 0] == pytest.approx(0.75 / (0.75 + 1 / 3), abs=1e-9)
        assert self.model.predict(doc)[0] == 0


class TestLogisticRegression:
    def test_zero_weights_give_half(self):
        model = LogisticRegressionModel(np.zeros(3), 0.0, 3)
        proba = model.predict_proba(sp.csr_matrix(np.ones((1, 3))))
        assert np.allclose(proba, [[0.5, 0.5]])

    def test_tie_breaks_to_zero(self):
        model = LogisticRegressionModel(np.zeros(2), 0.0, 2)
        assert model.predict(sp.csr_matrix(np.ones((1, 2))))[0] == 0

    @pytest.mark.parametrize("seed", range(20))
    def test_gradient_matches_finite_differences(self, seed):
        rng = np.random.default_rng(seed)
        n, dim = 12, 4
        X = sp.csr_matrix(rng.random((n, dim)))
        y = rng.integers(0, 2, n).astype(float)
        w = rng.normal(size=dim)
        b = float(rng.normal())
        l2 = 0.1
        _, gw, gb = logistic_loss_grad(w, b, X, y, l2)
        h = 1e-5
        for j in range(dim):
            wp, wm = w.copy(), w.copy()
            wp[j] += h
            wm[j] -= h
            num = (logistic_loss_grad(wp, b, X, y, l2)[0]
                   - logistic_loss_grad(wm, b, X, y, l2)[0]) / (2 * h)
            assert abs(num - gw[j]) / max(abs(num), 1e-8) < 1e-4
        num_b = (logistic_loss_grad(w, b + h, X, y, l2)[0]
                 - logistic_loss_grad(w, b - h, X, y, l2)[0]) / (2 * h)
        assert abs(num_b - gb) / max(abs(num_b), 1e-8) < 1e-4


class TestDecisionTree:
    def test_full_depth_memorizes_consistent_data(self):
        X, y = random_sparse(40, 6, seed=11)
        model = train(X, y, Hyperparams("decision_tree"))
        assert (model.predict(X) == y).all()

    def test_max_depth_one_is_a_stump(self):
        X, y = threshold_data()
        model = train(X, y, Hyperparams("decision_tree", max_depth=1))
        root = model.root
        assert not root.is_leaf
        assert root.left.is_leaf and root.right.is_leaf
        assert (model.predict(X) == y).all()

    def test_split_tie_breaks_to_lowest_feature(self):
        # identical columns: both give a perfect split; feature 0 must win
        col = np.array([0.0, 0.0, 1.0, 1.0])
        X = sp.csr_matrix(np.column_stack([col, col]))
        model = train(X, [0, 0, 1, 1], Hyperparams("decision_tree"))
        assert model.root.feature == 0


class TestRandomForest:
    def test_single_full_tree_equals_decision_tree(self):
        X, y = random_sparse(30, 5, seed=13)
        forest = train(
            X, y,
            Hyperparams("random_forest", trees=1, feature_subsample="all",
                        bootstrap=False, seed=5),
        )
        tree = train(X, y, Hyperparams("decision_tree"))
        assert forest.trees[0].root.to_dict() == tree.root.to_dict()
        assert (forest.predict(X) == tree.predict(X)).all()

    def test_vote_fractions(self):
        leaf0 = TreeNode(proba=(1.0, 0.0))
        leaf1 = TreeNode(proba=(0.0, 1.0))
        trees = [DecisionTreeModel(leaf1, 2)] * 3 + [DecisionTreeModel(leaf0, 2)]
        forest = RandomForestModel(trees, 2)
        proba = forest.predict_proba(sp.csr_matrix(np.ones((1, 2))))
        assert np.allclose(proba, [[0.25, 0.75]])


class TestKnn:
    def test_query_equal_to_training_point(self):
        # dense rows: no zero vectors or accidental colinear duplicates
        X, y = random_sparse(15, 4, seed=17, density=1.0)
        model = train(X, y, Hyperparams("knn", k_neighbors=1))
        assert (model.predict(X) == y).all()

    def test_neighbor_fraction_proba(self):
        X = sp.csr_matrix(np.array([[1.0, 0.0], [1.0, 0.1], [0.0, 1.0]]))
        model = KnnModel.fit(X, [1, 1, 0], k=3)
        proba = model.predict_proba(sp.csr_matrix(np.array([[1.0, 0.0]])))
        assert np.allclose(proba, [[1 / 3, 2 / 3]])

    def test_scaling_invariance_under_cosine(self):
        X, y = random_sparse(20, 6, seed=19)
        q, _ = random_sparse(5, 6, seed=23)
        model = KnnModel.fit(X, y, k=3)
        scaled = KnnModel.fit(X * 7.5, y, k=3)
        assert (model.predict(q) == scaled.predict(q * 0.3)).all()

    def test_distance_tie_prefers_lowest_index(self):
        X = sp.csr_matrix(np.array([[1.0, 0.0], [2.0, 0.0], [0.0, 1.0]]))
        model = KnnModel.fit(X, [1, 0, 0], k=1)
        # both training points 0 and 1 are at cosine distance 0
        assert model.predict(sp.csr_matrix(np.array([[3.0, 0.0]])))[0] == 1


class TestHyperparams:
    def test_unknown_algorithm(self):
        with pytest.raises(ClassifierError):
            Hyperparams("boosting")

    def test_nonpositive_values(self):
        with pytest.raises(ClassifierError):
            Hyperparams("random_forest", trees=0)
        with pytest.raises(ClassifierError):
            Hyperparams("logistic_regression", learning_rate=-0.1)
