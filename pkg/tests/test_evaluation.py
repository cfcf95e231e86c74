import numpy as np
import pytest

from qrbf.errors import CapabilityError, ConfigurationError, DomainError
from qrbf.evaluation import (
    accuracy,
    confusion_matrix,
    decision_boundary_grid,
    mse,
    training_size_sweep,
)
from qrbf.kernels import KernelSpec
from qrbf.network import RbfModel, classify


class TestMse:
    def test_identical_arrays(self):
        assert mse([[1.0, 2.0]], [[1.0, 2.0]]) == 0.0

    def test_scalar_case(self):
        assert mse([[0.0]], [[2.0]]) == 4.0

    def test_averages_over_all_entries(self):
        assert mse([[1.0, 1.0]], [[0.0, 2.0]]) == 1.0

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            mse([[1.0]], [[1.0, 2.0]])

    def test_nonnegative_and_zero_iff_equal(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((5, 2))
        b = rng.standard_normal((5, 2))
        assert mse(a, b) > 0
        assert mse(a, a) == 0.0


class TestAccuracy:
    def test_all_correct(self):
        assert accuracy([0, 1, 2], [0, 1, 2]) == 1.0

    def test_forty_three_of_forty_five(self):
        true = np.zeros(45, dtype=int)
        pred = true.copy()
        pred[:2] = 1
        assert accuracy(pred, true) == pytest.approx(43 / 45)
        assert round(accuracy(pred, true), 3) == 0.956

    def test_none_correct(self):
        assert accuracy([1, 1], [0, 0]) == 0.0

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            accuracy([], [])


class TestConfusionMatrix:
    def test_perfect_balanced_predictions(self):
        labels = np.repeat([0, 1, 2], 15)
        np.testing.assert_array_equal(
            confusion_matrix(labels, labels, 3), np.diag([15, 15, 15])
        )

    def test_single_misclassification(self):
        out = confusion_matrix([2], [0], 3)
        expected = np.zeros((3, 3), dtype=int)
        expected[0, 2] = 1
        np.testing.assert_array_equal(out, expected)

    def test_trace_equals_accuracy(self):
        rng = np.random.default_rng(1)
        true = rng.integers(0, 4, 60)
        pred = rng.integers(0, 4, 60)
        cm = confusion_matrix(pred, true, 4)
        assert np.trace(cm) / 60 == pytest.approx(accuracy(pred, true))
        assert cm.sum() == 60
        np.testing.assert_array_equal(cm.sum(axis=1), np.bincount(true, minlength=4))

    def test_out_of_range_label(self):
        with pytest.raises(DomainError):
            confusion_matrix([4], [0], 3)


def linear_model_2d(beta_rows):
    return RbfModel(centres=[[0.0, 0.0]], beta=[beta_rows], kernel=KernelSpec(kind="linear"))


class TestDecisionBoundaryGrid:
    def test_grid_size(self):
        model = linear_model_2d([0.0, 1.0])
        grid = decision_boundary_grid(model, ((0, 1), (0, 1)), 3)
        assert grid.shape == (9, 3)

    def test_constant_model_single_class(self):
        model = linear_model_2d([0.0, 1.0])  # class 1 everywhere off-centre
        grid = decision_boundary_grid(model, ((1, 2), (1, 2)), 4)
        assert set(grid[:, 2].astype(int)) == {1}

    def test_matches_direct_classification(self):
        rng = np.random.default_rng(2)
        model = RbfModel(
            centres=rng.uniform(-1, 1, (4, 2)),
            beta=rng.standard_normal((4, 3)),
            kernel=KernelSpec(kind="gaussian", gamma=1.0),
        )
        grid = decision_boundary_grid(model, ((-1, 1), (-1, 1)), 5)
        direct = classify(model, grid[:, :2])
        np.testing.assert_array_equal(grid[:, 2].astype(int), direct)

    def test_requires_two_features(self):
        model = RbfModel(centres=[[0.0]], beta=[[1.0, 0.0]], kernel=KernelSpec(kind="linear"))
        with pytest.raises(CapabilityError):
            decision_boundary_grid(model, ((0, 1), (0, 1)), 3)


class TestTrainingSizeSweep:
    def test_degenerate_single_cell(self):
        rows = training_size_sweep(lambda ratio, seed: 0.75, [0.7], [3])
        assert rows == [
            {"ratio": 0.7, "mean_accuracy": 0.75, "std": 0.0,
             "per_seed": [(3, 0.75)], "errors": []}
        ]

    def test_std_zero_for_single_seed(self):
        rows = training_size_sweep(lambda r, s: r + s, [0.5], [1])
        assert rows[0]["std"] == 0.0

    def test_aggregates_across_seeds(self):
        rows = training_size_sweep(lambda r, s: float(s), [0.5], [0, 1, 2])
        assert rows[0]["mean_accuracy"] == pytest.approx(1.0)
        assert rows[0]["std"] == pytest.approx(1.0)

    def test_error_cells_reported_not_fatal(self):
        def run_cell(ratio, seed):
            if ratio < 0.5:
                raise ConfigurationError("too few training points")
            return 0.9

        rows = training_size_sweep(run_cell, [0.2, 0.7], [0, 1])
        assert rows[0]["mean_accuracy"] is None
        assert len(rows[0]["errors"]) == 2
        assert rows[1]["mean_accuracy"] == pytest.approx(0.9)

    def test_invalid_ratio_rejected(self):
        with pytest.raises(ConfigurationError):
            training_size_sweep(lambda r, s: 1.0, [1.5], [0])

    def test_reproducible_for_identical_seed_lists(self):
        rng_calls = []

        def run_cell(ratio, seed):
            value = float(np.random.default_rng(seed).uniform())
            rng_calls.append(value)
            return value

        a = training_size_sweep(run_cell, [0.5], [4, 5])
        b = training_size_sweep(run_cell, [0.5], [4, 5])
        assert a == b
