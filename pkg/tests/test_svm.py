import numpy as np
import pytest

from strokesense.errors import EmptyClass, NoConvergence
from strokesense.labels import StrokeLabel
from strokesense.svm import (
    DagSvmModel,
    KernelSvmModel,
    dag_predict,
    dag_predict_batch,
    default_gamma,
    gaussian_kernel_matrix,
    pairwise_vote,
    smo_solve,
    train_dagsvm,
    train_pairwise_svm,
)


class TestKernel:
    def test_known_values(self):
        A = np.array([[0.0, 0.0], [1.0, 0.0]])
        B = np.array([[0.0, 0.0], [0.0, 2.0]])
        K = gaussian_kernel_matrix(A, B, gamma=0.5)
        want = np.array(
            [[1.0, np.exp(-2.0)], [np.exp(-0.5), np.exp(-2.5)]]
        )
        np.testing.assert_allclose(K, want, rtol=1e-12)

    def test_symmetric_unit_diagonal(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(10, 4))
        K = gaussian_kernel_matrix(X, X, gamma=0.3)
        np.testing.assert_allclose(K, K.T, atol=1e-14)
        np.testing.assert_allclose(np.diag(K), 1.0, atol=1e-14)

    def test_default_gamma(self):
        X = np.array([[1.0, -1.0], [3.0, -3.0]])
        np.testing.assert_allclose(default_gamma(X), 1.0 / (2 * X.var()))


class TestSmo:
    def test_alphas_respect_box_and_kkt_sum(self):
        rng = np.random.default_rng(5)
        X = np.vstack([rng.normal(0, 1, (15, 3)), rng.normal(4, 1, (15, 3))])
        y = np.concatenate([np.ones(15), -np.ones(15)])
        K = gaussian_kernel_matrix(X, X, 0.2)
        alphas, _ = smo_solve(K, y, c=1.0)
        assert (alphas >= -1e-12).all() and (alphas <= 1.0 + 1e-12).all()
        np.testing.assert_allclose(alphas @ y, 0.0, atol=1e-10)

    def test_deterministic(self):
        rng = np.random.default_rng(9)
        X = rng.normal(size=(30, 2))
        y = np.sign(X[:, 0] + 0.1)
        K = gaussian_kernel_matrix(X, X, 1.0)
        a1, b1 = smo_solve(K, y, c=2.0)
        a2, b2 = smo_solve(K, y, c=2.0)
        np.testing.assert_array_equal(a1, a2)
        assert b1 == b2

    def test_no_convergence_raises(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(40, 2))
        y = np.where(rng.random(40) > 0.5, 1.0, -1.0)
        K = gaussian_kernel_matrix(X, X, 100.0)
        with pytest.raises(NoConvergence):
            smo_solve(K, y, c=1e6, tol=1e-12, max_passes=3)


class TestPairwise:
    def test_separable_training_accuracy(self):
        rng = np.random.default_rng(2)
        Xa = rng.normal(0, 0.4, (25, 3))
        Xb = rng.normal(3, 0.4, (25, 3))
        model = train_pairwise_svm(Xa, Xb, class_pair=(1, 4))
        assert (model.decision(Xa) > 0).all()
        assert (model.decision(Xb) < 0).all()

    def test_empty_class(self):
        with pytest.raises(EmptyClass):
            train_pairwise_svm(np.zeros((0, 3)), np.ones((4, 3)))

    def test_round_trip(self):
        rng = np.random.default_rng(4)
        model = train_pairwise_svm(
            rng.normal(0, 1, (10, 2)), rng.normal(3, 1, (10, 2)), class_pair=(2, 5)
        )
        again = KernelSvmModel.from_dict(model.to_dict())
        X = rng.normal(size=(5, 2))
        np.testing.assert_array_equal(model.decision(X), again.decision(X))


def _unanimous_dag(favored: int) -> DagSvmModel:
    """A DAG whose every pairwise model prefers ``favored``."""
    models = {}
    for a in range(6):
        for b in range(a + 1, 6):
            bias = 1.0 if a == favored else (-1.0 if b == favored else 1.0)
            models[(a, b)] = KernelSvmModel(
                support_vectors=np.zeros((0, 2)),
                coef=np.zeros(0),
                b=bias,
                gamma=1.0,
                c=1.0,
                class_pair=(a, b),
            )
    return DagSvmModel(models=models)


class TestDag:
    def test_unanimous_preference_wins(self):
        x = np.zeros(2)
        for favored in range(6):
            dag = _unanimous_dag(favored)
            label, trace = dag_predict(dag, x, trace=True)
            assert label == StrokeLabel(favored)
            assert len(trace) == 5
            assert pairwise_vote(dag, x) == StrokeLabel(favored)

    def test_five_evaluations_always(self, small_features):
        X, y = small_features
        dag = train_dagsvm(X, y)
        for x in X[::7]:
            _, trace = dag_predict(dag, x, trace=True)
            assert len(trace) == 5
            assert len(set(trace)) == 5

    def test_training_accuracy_on_corpus(self, small_features):
        X, y = small_features
        dag = train_dagsvm(X, y)
        preds = dag_predict_batch(dag, X)
        assert (preds == y).mean() >= 0.95

    def test_dag_agrees_with_pairwise_vote(self, small_features):
        X, y = small_features
        dag = train_dagsvm(X, y)
        agree = sum(
            dag_predict(dag, x) == pairwise_vote(dag, x) for x in X
        )
        assert agree / len(X) >= 0.9

    def test_round_trip(self, small_features):
        X, y = small_features
        dag = train_dagsvm(X, y)
        again = DagSvmModel.from_dict(dag.to_dict())
        np.testing.assert_array_equal(
            dag_predict_batch(dag, X[:20]), dag_predict_batch(again, X[:20])
        )

    def test_requires_all_pairs(self):
        dag = _unanimous_dag(0)
        models = dict(dag.models)
        models.pop((0, 1))
        with pytest.raises(ValueError):
            DagSvmModel(models=models)
