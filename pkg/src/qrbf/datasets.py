"""Synthetic dataset generators, Iris CSV ingestion, splitting and alpha policy."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, IngestionError
from .network import one_hot

SINE_RANGE = (0.0, 2.0 * np.pi)
POLY_RANGE = (0.0, 10.0)
LOGISTIC_R = 4.0
LOGISTIC_X0 = 0.3
SPIRAL_OFFSETS = (np.pi, -np.pi, 4.0 * np.pi)

# noise defaults; the interpolation targets are unit-order so 0.1 is ~10%
DEFAULT_NOISE = {"sine": 0.1, "polynomial": 0.1, "logistic": 0.01}


@dataclass(frozen=True)
class Dataset:
    inputs: np.ndarray  # m x P
    outputs: np.ndarray  # m x q
    labels: np.ndarray | None = None  # m class indices, classification only
    name: str = ""

    def __post_init__(self):
        inputs = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        outputs = np.asarray(self.outputs, dtype=float)
        if outputs.ndim == 1:
            outputs = outputs[:, None]
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)
        if inputs.shape[0] != outputs.shape[0]:
            raise ConfigurationError(
                f"inputs have {inputs.shape[0]} rows but outputs have {outputs.shape[0]}"
            )
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=int)
            object.__setattr__(self, "labels", labels)
            if labels.shape != (inputs.shape[0],):
                raise ConfigurationError("labels must be one class index per row")
            if labels.size and (labels.min() < 0 or labels.max() >= outputs.shape[1]):
                raise ConfigurationError("labels must lie in [0, q)")

    @property
    def m(self) -> int:
        return self.inputs.shape[0]

    @property
    def feature_count(self) -> int:
        return self.inputs.shape[1]


@dataclass(frozen=True)
class SplitDataset:
    train: Dataset
    test: Dataset
    split_seed: int
    ratio: float


def _curve_dataset(name, fn, lo, hi, m, seed, noise_sigma, sampling):
    if m < 2:
        raise ConfigurationError("need at least 2 datapoints")
    if noise_sigma < 0:
        raise DomainError("noise_sigma must be >= 0")
    rng = np.random.default_rng(seed)
    if sampling == "grid":
        x = np.linspace(lo, hi, m)
    elif sampling == "random":
        x = rng.uniform(lo, hi, m)
    else:
        raise ConfigurationError(f"sampling must be 'grid' or 'random', got {sampling!r}")
    f = fn(x)
    if noise_sigma > 0:
        f = f + rng.normal(0.0, noise_sigma, m)
    return Dataset(inputs=x[:, None], outputs=f[:, None], name=name)


def gen_sine(m: int, seed: int = 0, noise_sigma: float = DEFAULT_NOISE["sine"],
             sampling: str = "grid") -> Dataset:
    """sin(x) over [0, 2*pi]; grid sampling for training, random for testing."""
    return _curve_dataset("sine", np.sin, *SINE_RANGE, m, seed, noise_sigma, sampling)


def gen_polynomial(m: int, seed: int = 0, noise_sigma: float = DEFAULT_NOISE["polynomial"],
                   sampling: str = "grid") -> Dataset:
    """x^2 - 0.1 x^3 over [0, 10]."""
    return _curve_dataset(
        "polynomial", lambda x: x**2 - 0.1 * x**3, *POLY_RANGE, m, seed, noise_sigma, sampling
    )


def logistic_step(x):
    return LOGISTIC_R * x * (1.0 - x)


def gen_logistic_map(steps: int, seed: int = 0,
                     noise_sigma: float = DEFAULT_NOISE["logistic"]) -> Dataset:
    """Delay pairs (x(t), x(t+1)) of the chaotic logistic map from x(0) = 0.3."""
    if steps < 2:
        raise ConfigurationError("need at least 2 steps")
    if noise_sigma < 0:
        raise DomainError("noise_sigma must be >= 0")
    traj = np.empty(steps + 1)
    traj[0] = LOGISTIC_X0
    for t in range(steps):
        traj[t + 1] = logistic_step(traj[t])
    outputs = traj[1:].copy()
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        outputs = outputs + rng.normal(0.0, noise_sigma, steps)
    return Dataset(inputs=traj[:-1, None], outputs=outputs[:, None], name="logistic")


def gen_spiral(per_class: int, seed: int = 0, noise: bool = True,
               theta_mode: str = "normalized") -> Dataset:
    """Three interleaved spirals with radius 2*theta + offset and U(0,1) jitter.

    theta_mode 'normalized' uses theta_i = 2*pi*sqrt(i / per_class) (one turn,
    radii of order 10); 'raw' uses 2*pi*sqrt(i). Rows are shuffled together.
    """
    if per_class < 1:
        raise ConfigurationError("per_class must be >= 1")
    if theta_mode not in ("normalized", "raw"):
        raise ConfigurationError(f"theta_mode must be 'normalized' or 'raw', got {theta_mode!r}")
    rng = np.random.default_rng(seed)
    i = np.arange(per_class, dtype=float)
    theta = 2.0 * np.pi * np.sqrt(i / per_class if theta_mode == "normalized" else i)
    points, labels = [], []
    for k, a_k in enumerate(SPIRAL_OFFSETS):
        r = 2.0 * theta + a_k
        xy = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
        if noise:
            xy = xy + rng.uniform(0.0, 1.0, xy.shape)
        points.append(xy)
        labels.append(np.full(per_class, k))
    inputs = np.vstack(points)
    labels = np.concatenate(labels)
    order = rng.permutation(inputs.shape[0])
    inputs, labels = inputs[order], labels[order]
    return Dataset(inputs=inputs, outputs=one_hot(labels, 3), labels=labels, name="spiral")


def load_iris(path) -> Dataset:
    """Iris CSV: 4 numeric feature columns plus a species name column.

    Species map to class indices in first-appearance order; a header row is
    auto-detected.
    """
    try:
        with open(path, encoding="utf-8") as f:
            rows = list(csv.reader(f))
    except OSError as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in rows if r]
    if not rows:
        raise IngestionError(f"{path}: file is empty")
    start = 0
    try:
        float(rows[0][0])
    except (ValueError, IndexError):
        start = 1  # header row
    if len(rows) <= start:
        raise IngestionError(f"{path}: no data rows")
    features, names = [], []
    for idx, row in enumerate(rows[start:], start=start + 1):
        if len(row) != 5:
            raise IngestionError(f"{path}: row {idx} has {len(row)} columns, expected 5")
        try:
            features.append([float(v) for v in row[:4]])
        except ValueError as exc:
            raise IngestionError(f"{path}: row {idx}: {exc}") from exc
        names.append(row[4].strip())
    class_names = list(dict.fromkeys(names))
    if len(class_names) != 3:
        raise IngestionError(f"{path}: expected 3 classes, found {len(class_names)}")
    if len(features) != 150:
        warnings.warn(f"{path}: expected 150 rows, found {len(features)}", stacklevel=2)
    labels = np.array([class_names.index(n) for n in names])
    return Dataset(
        inputs=np.asarray(features),
        outputs=one_hot(labels, 3),
        labels=labels,
        name="iris",
    )


def split(data: Dataset, ratio: float, seed: int = 0) -> SplitDataset:
    """Seeded shuffle, then a round(ratio * m) / rest partition."""
    if not 0.0 < ratio < 1.0:
        raise ConfigurationError(f"ratio must be in (0, 1), got {ratio}")
    m = data.m
    n_train = int(round(ratio * m))
    if n_train == 0 or n_train == m:
        raise ConfigurationError(f"ratio {ratio} leaves an empty partition for m={m}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(m)
    tr, te = order[:n_train], order[n_train:]

    def take(idx):
        return Dataset(
            inputs=data.inputs[idx],
            outputs=data.outputs[idx],
            labels=None if data.labels is None else data.labels[idx],
            name=data.name,
        )

    return SplitDataset(train=take(tr), test=take(te), split_seed=seed, ratio=ratio)


def default_alpha(data: Dataset, mode: str = "pi_over_max") -> np.ndarray:
    """Per-feature encoding scale: pi / max|x| (or 1 / max|x|), 1 if degenerate."""
    if data.m == 0:
        raise ConfigurationError("dataset is empty")
    if mode not in ("pi_over_max", "inv_max"):
        raise ConfigurationError(f"mode must be 'pi_over_max' or 'inv_max', got {mode!r}")
    num = np.pi if mode == "pi_over_max" else 1.0
    peak = np.abs(data.inputs).max(axis=0)
    return np.where(peak > 0, num / np.where(peak > 0, peak, 1.0), 1.0)


def dataset_to_csv(data: Dataset, path) -> None:
    """Columns x_1..x_P, f_1..f_q, label (blank when absent)."""
    p, q = data.feature_count, data.outputs.shape[1]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(
            [f"x_{j + 1}" for j in range(p)] + [f"f_{j + 1}" for j in range(q)] + ["label"]
        )
        for i in range(data.m):
            label = "" if data.labels is None else int(data.labels[i])
            writer.writerow(
                [repr(float(v)) for v in data.inputs[i]]
                + [repr(float(v)) for v in data.outputs[i]]
                + [label]
            )


def dataset_from_csv(path) -> Dataset:
    """Inverse of dataset_to_csv."""
    with open(path, encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if len(rows) < 2:
        raise IngestionError(f"{path}: no data rows")
    header = rows[0]
    p = sum(1 for h in header if h.startswith("x_"))
    q = sum(1 for h in header if h.startswith("f_"))
    if p == 0 or q == 0:
        raise IngestionError(f"{path}: header must contain x_* and f_* columns")
    inputs, outputs, labels = [], [], []
    for row in rows[1:]:
        inputs.append([float(v) for v in row[:p]])
        outputs.append([float(v) for v in row[p:p + q]])
        labels.append(row[p + q] if len(row) > p + q else "")
    has_labels = all(v != "" for v in labels)
    return Dataset(
        inputs=np.asarray(inputs),
        outputs=np.asarray(outputs),
        labels=np.asarray([int(v) for v in labels]) if has_labels else None,
    )
