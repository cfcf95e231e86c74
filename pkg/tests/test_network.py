import numpy as np
import pytest

from qrbf.errors import ConfigurationError, DomainError
from qrbf.kernels import KernelSpec
from qrbf.network import (
    RbfModel,
    classify,
    fit,
    load_model,
    one_hot,
    predict,
    pseudo_inverse_solve,
    save_model,
)
from qrbf.quantum import FeatureMap


def quantum_spec(p, alpha=None, seed=0):
    alpha = np.ones(p) if alpha is None else np.asarray(alpha, dtype=float)
    return KernelSpec(kind="quantum", feature_map=FeatureMap(p, alpha, seed))


class TestPseudoInverseSolve:
    def test_identity_system(self):
        targets = np.array([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_allclose(pseudo_inverse_solve(np.eye(2), targets), targets)

    def test_overdetermined_scalar(self):
        # normal equations: (phi^T phi)^-1 phi^T f = 5^-1 * 5 = 1
        beta = pseudo_inverse_solve(np.array([[1.0], [2.0]]), np.array([[1.0], [2.0]]))
        np.testing.assert_allclose(beta, [[1.0]])

    def test_rank_deficient_minimum_norm(self):
        phi = np.ones((2, 2))
        beta = pseudo_inverse_solve(phi, np.array([[2.0], [2.0]]))
        np.testing.assert_allclose(beta, [[1.0], [1.0]], atol=1e-12)

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            pseudo_inverse_solve(np.array([[np.nan]]), np.array([[1.0]]))
        with pytest.raises(DomainError):
            pseudo_inverse_solve(np.array([[1.0]]), np.array([[np.inf]]))

    def test_pseudoinverse_identities_on_random_matrices(self):
        rng = np.random.default_rng(0)
        for k in range(100):
            m, n = rng.integers(2, 8, 2)
            phi = rng.standard_normal((m, n))
            if k % 3 == 0 and min(m, n) > 1:
                phi[:, -1] = phi[:, 0]  # force rank deficiency
            pinv = np.linalg.pinv(phi)
            np.testing.assert_allclose(phi @ pinv @ phi, phi, atol=1e-8)
            np.testing.assert_allclose(pinv @ phi @ pinv, pinv, atol=1e-8)

    def test_least_squares_optimality_under_perturbation(self):
        rng = np.random.default_rng(1)
        phi = rng.standard_normal((10, 4))
        targets = rng.standard_normal((10, 2))
        beta = pseudo_inverse_solve(phi, targets)
        base = np.linalg.norm(phi @ beta - targets)
        for _ in range(100):
            delta = rng.standard_normal(beta.shape)
            delta *= 1e-3 / np.linalg.norm(delta)
            assert np.linalg.norm(phi @ (beta + delta) - targets) >= base

    def test_minimum_norm_on_rank_deficient_systems(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            phi = rng.standard_normal((6, 2)) @ rng.standard_normal((2, 5))
            targets = phi @ rng.standard_normal((5, 1))  # consistent system
            beta = pseudo_inverse_solve(phi, targets)
            _, s, vt = np.linalg.svd(phi)
            null = vt[(s > 1e-10 * s[0]).sum():].T
            for _ in range(5):
                other = beta + null @ rng.standard_normal((null.shape[1], 1))
                np.testing.assert_allclose(phi @ other, targets, atol=1e-8)
                assert np.linalg.norm(beta) <= np.linalg.norm(other) + 1e-12


class TestFitPredict:
    @pytest.mark.filterwarnings("ignore:centre count")
    def test_single_point_self_centre(self):
        model = fit([[0.4]], [[7.0]], [[0.4]], quantum_spec(1))
        np.testing.assert_allclose(model.beta, [[7.0]], atol=1e-12)

    def test_strict_interpolation(self):
        # gaussian Gram matrices on distinct points are invertible, so the
        # fit must pass exactly through arbitrary targets
        rng = np.random.default_rng(3)
        data = np.linspace(0, 2 * np.pi, 9)[:, None]
        targets = rng.standard_normal((9, 1))
        with pytest.warns(UserWarning, match="strict interpolation"):
            model = fit(data, targets, data, KernelSpec(kind="gaussian", gamma=1.0))
        residual = predict(model, data) - targets
        assert np.max(np.abs(residual)) < 1e-8

    def test_zero_beta_predicts_zero(self):
        model = RbfModel(centres=[[0.0]], beta=[[0.0]], kernel=quantum_spec(1))
        np.testing.assert_array_equal(predict(model, [[1.0], [2.0]]), [[0.0], [0.0]])

    @pytest.mark.filterwarnings("ignore:centre count")
    def test_shape_mismatch(self):
        with pytest.raises(ConfigurationError):
            fit([[0.0]], [[1.0], [2.0]], [[0.0]], quantum_spec(1))
        model = fit([[0.0]], [[1.0]], [[0.0]], quantum_spec(1))
        with pytest.raises(ConfigurationError):
            predict(model, [[0.0, 1.0]])


class TestClassify:
    def _constant_model(self, outputs):
        # single centre, linear kernel; at distance 0 prediction = 0, so use
        # a direct beta row to pin the prediction values at the centre offset
        return RbfModel(centres=[[0.0]], beta=[list(outputs)], kernel=KernelSpec(kind="linear"))

    def test_clear_argmax(self):
        model = self._constant_model([0.1, 0.8, 0.1])
        assert classify(model, [[1.0]]).tolist() == [1]

    def test_tie_breaks_toward_lowest_index(self):
        model = self._constant_model([0.5, 0.5, 0.0])
        assert classify(model, [[1.0]]).tolist() == [0]

    def test_single_output_rejected(self):
        model = self._constant_model([1.0])
        with pytest.raises(ConfigurationError):
            classify(model, [[1.0]])

    def test_one_hot_fit_reproduces_training_labels(self):
        rng = np.random.default_rng(4)
        data = rng.uniform(-1, 1, (12, 2))
        labels = rng.integers(0, 3, 12)
        with pytest.warns(UserWarning):
            model = fit(data, one_hot(labels, 3), data, quantum_spec(2, seed=2))
        assert classify(model, data).tolist() == labels.tolist()


class TestOneHot:
    def test_single_label(self):
        np.testing.assert_array_equal(one_hot([1], 3), [[0, 1, 0]])

    def test_two_labels(self):
        np.testing.assert_array_equal(one_hot([0, 2], 3), [[1, 0, 0], [0, 0, 1]])

    def test_round_trip(self):
        rng = np.random.default_rng(5)
        labels = rng.integers(0, 4, 30)
        assert np.argmax(one_hot(labels, 4), axis=1).tolist() == labels.tolist()

    def test_rows_sum_to_one(self):
        encoded = one_hot([0, 1, 2, 1], 3)
        np.testing.assert_array_equal(encoded.sum(axis=1), np.ones(4))

    def test_out_of_range_label(self):
        with pytest.raises(DomainError):
            one_hot([3], 3)
        with pytest.raises(DomainError):
            one_hot([-1], 3)


class TestSerialization:
    def test_round_trip_reproduces_predictions(self, tmp_path):
        rng = np.random.default_rng(6)
        data = rng.uniform(-1, 1, (10, 2))
        targets = rng.standard_normal((10, 3))
        centres = rng.uniform(-1, 1, (4, 2))
        model = fit(data, targets, centres, quantum_spec(2, alpha=[0.8, 1.2], seed=11))
        path = tmp_path / "model.json"
        save_model(model, path)
        again = load_model(path)
        np.testing.assert_array_equal(predict(model, data), predict(again, data))
        assert again.kernel.feature_map.entangler_seed == 11

    def test_classical_model_round_trip(self, tmp_path):
        model = fit([[0.0], [1.0], [2.0]], [[0.0], [1.0], [4.0]], [[0.5], [1.5]],
                    KernelSpec(kind="gaussian", gamma=2.0))
        path = tmp_path / "model.json"
        save_model(model, path)
        again = load_model(path)
        assert again.kernel.gamma == 2.0
        np.testing.assert_array_equal(predict(model, [[0.7]]), predict(again, [[0.7]]))
