"""Metrics and reports: MSE, accuracy, confusion matrices, grids, sweeps."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, ConfigurationError, DomainError
from .network import RbfModel, classify


@dataclass
class EvaluationReport:
    mse: float | None = None
    accuracy: float | None = None
    confusion: np.ndarray | None = None
    per_seed: list = field(default_factory=list)  # (seed, metric) pairs
    mean: float | None = None
    std: float | None = None

    def to_dict(self) -> dict:
        return {
            "mse": self.mse,
            "accuracy": self.accuracy,
            "confusion": None if self.confusion is None else self.confusion.tolist(),
            "per_seed": [[int(s), float(v)] for s, v in self.per_seed],
            "mean": self.mean,
            "std": self.std,
        }


def mse(predicted, actual) -> float:
    """Mean squared difference over all entries."""
    predicted = np.asarray(predicted, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if predicted.shape != actual.shape:
        raise DomainError(f"shape mismatch: {predicted.shape} vs {actual.shape}")
    return float(np.mean((predicted - actual) ** 2))


def accuracy(predicted_labels, true_labels) -> float:
    """Fraction of exact label matches."""
    predicted_labels = np.asarray(predicted_labels)
    true_labels = np.asarray(true_labels)
    if predicted_labels.shape != true_labels.shape:
        raise DomainError("label vectors must have equal length")
    if predicted_labels.size == 0:
        raise DomainError("label vectors are empty")
    return float(np.mean(predicted_labels == true_labels))


def confusion_matrix(predicted_labels, true_labels, num_classes: int) -> np.ndarray:
    """Entry (t, p) counts samples of true class t predicted as p."""
    predicted_labels = np.asarray(predicted_labels, dtype=int)
    true_labels = np.asarray(true_labels, dtype=int)
    if predicted_labels.shape != true_labels.shape:
        raise DomainError("label vectors must have equal length")
    for v in (predicted_labels, true_labels):
        if v.size and (v.min() < 0 or v.max() >= num_classes):
            raise DomainError(f"labels must lie in [0, {num_classes})")
    out = np.zeros((num_classes, num_classes), dtype=int)
    np.add.at(out, (true_labels, predicted_labels), 1)
    return out


def decision_boundary_grid(model: RbfModel, bounds, resolution: int) -> np.ndarray:
    """(x, y, predicted_class) rows over a resolution x resolution lattice.

    bounds is ((x_low, x_high), (y_low, y_high)); only P = 2 models supported.
    """
    if model.centres.shape[1] != 2:
        raise CapabilityError("decision boundary grids require 2-D inputs")
    (x_lo, x_hi), (y_lo, y_hi) = bounds
    xs = np.linspace(x_lo, x_hi, resolution)
    ys = np.linspace(y_lo, y_hi, resolution)
    gx, gy = np.meshgrid(xs, ys)
    points = np.column_stack((gx.ravel(), gy.ravel()))
    labels = classify(model, points)
    return np.column_stack((points, labels))


def grid_to_csv(grid: np.ndarray, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["x", "y", "predicted_class"])
        for x, y, c in grid:
            writer.writerow([repr(float(x)), repr(float(y)), int(c)])


def training_size_sweep(run_cell, ratios, seeds) -> list[dict]:
    """Refit/evaluate over every (ratio, seed) cell and aggregate across seeds.

    run_cell(ratio, seed) returns an accuracy; a ConfigurationError in a cell
    is reported (metric None) rather than fatal. std is the sample standard
    deviation, 0 for a single seed.
    """
    ratios = list(ratios)
    seeds = [int(s) for s in seeds]
    if not ratios or not seeds:
        raise ConfigurationError("need at least one ratio and one seed")
    for r in ratios:
        if not 0.0 < r < 1.0:
            raise ConfigurationError(f"ratio must be in (0, 1), got {r}")
    rows = []
    for ratio in ratios:
        cells, errors = [], []
        for seed in seeds:
            try:
                cells.append((seed, float(run_cell(ratio, seed))))
            except ConfigurationError as exc:
                errors.append({"seed": seed, "error": str(exc)})
        values = np.array([v for _, v in cells])
        rows.append(
            {
                "ratio": ratio,
                "mean_accuracy": float(values.mean()) if values.size else None,
                "std": (float(values.std(ddof=1)) if values.size > 1 else 0.0)
                if values.size
                else None,
                "per_seed": cells,
                "errors": errors,
            }
        )
    return rows


def sweep_to_csv(rows: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["ratio", "mean_accuracy", "std", "n_seeds", "n_errors"])
        for row in rows:
            writer.writerow(
                [
                    repr(row["ratio"]),
                    "" if row["mean_accuracy"] is None else repr(row["mean_accuracy"]),
                    "" if row["std"] is None else repr(row["std"]),
                    len(row["per_seed"]),
                    len(row["errors"]),
                ]
            )
