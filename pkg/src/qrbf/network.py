"""The RBF model: pseudoinverse fit, prediction, classification, one-hot targets."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, NumericError
from .kernels import KernelSpec, build_kernel_matrix


def default_rcond(m: int, n: int) -> float:
    return np.finfo(float).eps * max(m, n)


def pseudo_inverse_solve(phi, targets, rcond: float | None = None) -> np.ndarray:
    """Minimum-norm least-squares solution of phi @ beta = targets via SVD.

    Singular values below rcond * sigma_max are treated as zero.
    """
    phi = np.atleast_2d(np.asarray(phi, dtype=float))
    targets = np.asarray(targets, dtype=float)
    if targets.ndim == 1:
        targets = targets[:, None]
    if not np.all(np.isfinite(phi)) or not np.all(np.isfinite(targets)):
        raise DomainError("inputs to the solve must be finite")
    if phi.shape[0] != targets.shape[0]:
        raise ConfigurationError(
            f"phi has {phi.shape[0]} rows but targets have {targets.shape[0]}"
        )
    if rcond is None:
        rcond = default_rcond(*phi.shape)
    try:
        return np.linalg.pinv(phi, rcond=rcond) @ targets
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc


@dataclass(frozen=True)
class RbfModel:
    """Trained network: centres, fitted coefficients and the kernel choice."""

    centres: np.ndarray  # n x P
    beta: np.ndarray  # n x q
    kernel: KernelSpec

    def __post_init__(self):
        centres = np.atleast_2d(np.asarray(self.centres, dtype=float))
        beta = np.atleast_2d(np.asarray(self.beta, dtype=float))
        object.__setattr__(self, "centres", centres)
        object.__setattr__(self, "beta", beta)
        if centres.shape[0] < 1:
            raise ConfigurationError("model needs at least one centre")
        if beta.shape[0] != centres.shape[0]:
            raise ConfigurationError(
                f"beta has {beta.shape[0]} rows but there are {centres.shape[0]} centres"
            )

    @property
    def output_dim(self) -> int:
        return self.beta.shape[1]


def fit(data, targets, centres, kernel: KernelSpec, rcond: float | None = None) -> RbfModel:
    """Build the kernel matrix and solve for the coefficients."""
    data = np.atleast_2d(np.asarray(data, dtype=float))
    targets = np.asarray(targets, dtype=float)
    if targets.ndim == 1:
        targets = targets[:, None]
    centres = np.atleast_2d(np.asarray(centres, dtype=float))
    if data.shape[0] != targets.shape[0]:
        raise ConfigurationError(
            f"data has {data.shape[0]} rows but targets have {targets.shape[0]}"
        )
    if centres.shape[0] >= data.shape[0]:
        warnings.warn(
            "centre count >= datapoint count: strict interpolation, expect overfitting",
            stacklevel=2,
        )
    phi = build_kernel_matrix(data, centres, kernel)
    beta = pseudo_inverse_solve(phi, targets, rcond)
    return RbfModel(centres=centres, beta=beta, kernel=kernel)


def predict(model: RbfModel, data) -> np.ndarray:
    """Model outputs for new datapoints: Phi_test @ beta."""
    data = np.atleast_2d(np.asarray(data, dtype=float))
    if data.shape[1] != model.centres.shape[1]:
        raise ConfigurationError(
            f"data has {data.shape[1]} columns but centres have {model.centres.shape[1]}"
        )
    phi = build_kernel_matrix(data, model.centres, model.kernel)
    return phi @ model.beta


def classify(model: RbfModel, data) -> np.ndarray:
    """Class index per row: argmax over outputs, ties broken toward index 0."""
    if model.output_dim < 2:
        raise ConfigurationError("classification needs at least 2 output columns")
    return np.argmax(predict(model, data), axis=1)


def one_hot(labels, num_classes: int) -> np.ndarray:
    """Binary target matrix with a single 1 per row."""
    labels = np.asarray(labels, dtype=int)
    if labels.ndim != 1:
        raise DomainError("labels must be a 1-D vector")
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise DomainError(
            f"labels must lie in [0, {num_classes}), got range "
            f"[{labels.min()}, {labels.max()}]"
        )
    out = np.zeros((labels.size, num_classes))
    out[np.arange(labels.size), labels] = 1.0
    return out


def save_model(model: RbfModel, path) -> None:
    """Write the model as JSON: enough to reload and reproduce predictions."""
    doc = {
        "centres": model.centres.tolist(),
        "beta": model.beta.tolist(),
        "kernel": model.kernel.to_dict(),
    }
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def load_model(path) -> RbfModel:
    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    return RbfModel(
        centres=np.asarray(doc["centres"], dtype=float),
        beta=np.asarray(doc["beta"], dtype=float),
        kernel=KernelSpec.from_dict(doc["kernel"]),
    )
