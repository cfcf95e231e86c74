"""Named, seeded experiment runs binding generators, centres, kernels and metrics.

Every run is controlled by an ExperimentConfig with four independent seeds
(data, centres, entangler, split) so the variance sources can be isolated.
Outputs are plain CSV/JSON files; two runs with identical configs produce
byte-identical metrics documents.
"""

from __future__ import annotations

import importlib.resources
import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import centres as centres_mod
from . import datasets as ds
from . import evaluation as ev
from . import network as net
from .errors import ConfigurationError, UsageError
from .kernels import KernelSpec
from .quantum import FeatureMap

DATASETS = ("sine", "polynomial", "logistic", "spiral", "iris")
MODELS = ("qrbf", "crbf")
STRATEGIES = ("uniform", "gaussian", "kmeans")
INTERPOLATION = ("sine", "polynomial", "logistic")

# published baseline accuracies/MSEs quoted for comparison, never recomputed
REFERENCE_TABLE1 = {
    "Linear SVM": {"sine": 0.257, "polynomial": 30.7, "logistic": 0.00426},
    "Gaussian SVM": {"sine": 0.0167, "polynomial": 10.0, "logistic": 0.00228},
    "MLP": {"sine": 0.076, "polynomial": 14.5, "logistic": 0.00233},
}
REFERENCE_TABLE2 = {"Linear SVM": 0.622, "Gaussian SVM": 0.800, "MLP": 0.822}
REFERENCE_TABLE3 = {"Linear SVM": 0.978, "Gaussian SVM": 0.978, "MLP": 1.0}

ENV_SEEDS = {
    "data": "QRBF_DATA_SEED",
    "centres": "QRBF_CENTRES_SEED",
    "entangler": "QRBF_ENTANGLER_SEED",
    "split": "QRBF_SPLIT_SEED",
}


def default_iris_path() -> Path:
    return Path(importlib.resources.files("qrbf").joinpath("data/iris.csv"))


@dataclass(frozen=True)
class Seeds:
    data: int = 0
    centres: int = 1
    entangler: int = 2
    split: int = 3

    def to_dict(self) -> dict:
        return {"data": self.data, "centres": self.centres,
                "entangler": self.entangler, "split": self.split}


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str = "sine"
    iris_path: str | None = None
    model: str = "qrbf"
    kernel_kind: str | None = None  # default: quantum for qrbf, gaussian for crbf
    gamma: float | None = None  # None -> heuristic from the centre spread
    centre_strategy: str | None = None  # default depends on model and task
    n_centres: int | None = None  # default: 5 interpolation, 50 classification
    alpha: list | str = "auto"
    alpha_mode: str | None = None  # default: inv_max for logistic, pi_over_max otherwise
    split_ratio: float = 0.7
    train_size: int = 15
    test_size: int = 100
    noise_sigma: float | None = None  # None -> per-dataset default
    theta_mode: str = "normalized"
    rcond: float | None = None  # None -> per-dataset default
    seeds: Seeds = field(default_factory=Seeds)
    output_dir: str = "out"

    def __post_init__(self):
        if self.dataset not in DATASETS:
            raise ConfigurationError(f"dataset must be one of {DATASETS}, got {self.dataset!r}")
        if self.model not in MODELS:
            raise ConfigurationError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.centre_strategy is not None and self.centre_strategy not in STRATEGIES:
            raise ConfigurationError(
                f"centre_strategy must be one of {STRATEGIES}, got {self.centre_strategy!r}"
            )
        if not 0.0 < self.split_ratio < 1.0:
            raise ConfigurationError(f"split_ratio must be in (0, 1), got {self.split_ratio}")

    @property
    def is_classification(self) -> bool:
        return self.dataset in ("spiral", "iris")

    def resolved_kernel_kind(self) -> str:
        if self.kernel_kind is not None:
            return self.kernel_kind
        return "quantum" if self.model == "qrbf" else "gaussian"

    def resolved_strategy(self) -> str:
        if self.centre_strategy is not None:
            return self.centre_strategy
        if self.model == "crbf":
            return "kmeans"
        return "gaussian" if self.is_classification else "uniform"

    def resolved_alpha_mode(self) -> str:
        if self.alpha_mode is not None:
            return self.alpha_mode
        # pi/max exploits the kernel's periodicity and suits the 1-D curve
        # fits; for the [0,1] logistic data and the signed classification
        # features the plain 1/max rule avoids aliasing distant points
        return "pi_over_max" if self.dataset in ("sine", "polynomial") else "inv_max"

    def resolved_rcond(self) -> float | None:
        if self.rcond is not None:
            return self.rcond
        # iris fidelity Gram matrices are severely ill-conditioned (entries
        # all near 1); a coarser truncation stops noise amplification
        return 1e-3 if self.dataset == "iris" else None

    def resolved_n_centres(self) -> int:
        if self.n_centres is not None:
            return self.n_centres
        return 50 if self.is_classification else 5

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["seeds"] = self.seeds.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict, use_env: bool = True) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        seed_dict = dict(d.pop("seeds", {}))
        unknown_seeds = set(seed_dict) - set(ENV_SEEDS)
        if unknown_seeds:
            raise ConfigurationError(f"unknown seed keys: {sorted(unknown_seeds)}")
        if use_env:
            for name, var in ENV_SEEDS.items():
                if var in os.environ and name not in seed_dict:
                    seed_dict[name] = int(os.environ[var])
        return cls(seeds=Seeds(**{k: int(v) for k, v in seed_dict.items()}), **d)

    @classmethod
    def load(cls, path, use_env: bool = True) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as f:
            return cls.from_dict(json.load(f), use_env=use_env)


def _test_seed(data_seed: int) -> np.random.SeedSequence:
    # deterministic child seed so train and test draws never overlap
    return np.random.SeedSequence([int(data_seed), 1])


def make_datasets(config: ExperimentConfig) -> ds.SplitDataset:
    """Training and held-out test sets for the configured experiment."""
    s = config.seeds
    sigma = config.noise_sigma
    if config.dataset in ("sine", "polynomial"):
        gen = ds.gen_sine if config.dataset == "sine" else ds.gen_polynomial
        if sigma is None:
            sigma = ds.DEFAULT_NOISE[config.dataset]
        train = gen(config.train_size, seed=s.data, noise_sigma=sigma, sampling="grid")
        test = gen(config.test_size, seed=_test_seed(s.data), noise_sigma=sigma,
                   sampling="random")
        return ds.SplitDataset(train=train, test=test, split_seed=s.split, ratio=0.0)
    if config.dataset == "logistic":
        if sigma is None:
            sigma = ds.DEFAULT_NOISE["logistic"]
        total = config.train_size + config.test_size
        data = ds.gen_logistic_map(total, seed=s.data, noise_sigma=sigma)
        return ds.split(data, config.train_size / total, seed=s.split)
    if config.dataset == "spiral":
        data = ds.gen_spiral(50, seed=s.data, theta_mode=config.theta_mode)
        return ds.split(data, config.split_ratio, seed=s.split)
    path = config.iris_path or default_iris_path()
    data = ds.load_iris(path)
    return ds.split(data, config.split_ratio, seed=s.split)


def select_centres(config: ExperimentConfig, train: ds.Dataset) -> np.ndarray:
    strategy = config.resolved_strategy()
    n = config.resolved_n_centres()
    if strategy == "uniform":
        lo = train.inputs.min(axis=0)
        hi = train.inputs.max(axis=0)
        return centres_mod.uniform_centres(lo, hi, n)
    if strategy == "gaussian":
        return centres_mod.gaussian_centres(train.inputs, n, seed=config.seeds.centres)
    return centres_mod.kmeans_centres(train.inputs, n, seed=config.seeds.centres)


def heuristic_gamma(centres: np.ndarray) -> float:
    """Gaussian width from the centre spread: sigma = d_max / sqrt(2n)."""
    n = centres.shape[0]
    if n == 1:
        return 1.0
    d_max = max(
        float(np.linalg.norm(centres[i] - centres[j]))
        for i in range(n)
        for j in range(i + 1, n)
    )
    if d_max == 0:
        return 1.0
    sigma = d_max / np.sqrt(2 * n)
    return float(1.0 / (2.0 * sigma**2))


def make_kernel(config: ExperimentConfig, train: ds.Dataset,
                centres: np.ndarray) -> KernelSpec:
    kind = config.resolved_kernel_kind()
    if kind == "quantum":
        if config.alpha == "auto":
            alpha = ds.default_alpha(train, mode=config.resolved_alpha_mode())
        else:
            alpha = np.asarray(config.alpha, dtype=float)
        fm = FeatureMap(
            feature_count=train.feature_count,
            alpha=alpha,
            entangler_seed=config.seeds.entangler,
        )
        return KernelSpec(kind="quantum", feature_map=fm)
    if kind == "gaussian":
        gamma = config.gamma if config.gamma is not None else heuristic_gamma(centres)
        return KernelSpec(kind="gaussian", gamma=gamma)
    return KernelSpec(kind=kind, gamma=config.gamma)


def fit_model(config: ExperimentConfig, train: ds.Dataset) -> net.RbfModel:
    centres = select_centres(config, train)
    kernel = make_kernel(config, train, centres)
    return net.fit(train.inputs, train.outputs, centres, kernel,
                   rcond=config.resolved_rcond())


def evaluate_model(model: net.RbfModel, test: ds.Dataset) -> ev.EvaluationReport:
    predicted = net.predict(model, test.inputs)
    report = ev.EvaluationReport(mse=ev.mse(predicted, test.outputs))
    if test.labels is not None and model.output_dim >= 2:
        labels = net.classify(model, test.inputs)
        report.accuracy = ev.accuracy(labels, test.labels)
        report.confusion = ev.confusion_matrix(labels, test.labels, model.output_dim)
    return report


def write_json(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def run_experiment(config: ExperimentConfig, write: bool = True) -> ev.EvaluationReport:
    """Generate/load data, select centres, fit, evaluate, write artifacts."""
    split = make_datasets(config)
    model = fit_model(config, split.train)
    report = evaluate_model(model, split.test)
    if write:
        out = Path(config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        net.save_model(model, out / "model.json")
        ds.dataset_to_csv(split.train, out / "train_data.csv")
        ds.dataset_to_csv(split.test, out / "test_data.csv")
        predicted = net.predict(model, split.test.inputs)
        pred_ds = ds.Dataset(inputs=split.test.inputs, outputs=predicted)
        ds.dataset_to_csv(pred_ds, out / "predictions.csv")
        write_json({"config": config.to_dict(), "metrics": report.to_dict()},
                   out / "metrics.json")
        if config.is_classification and split.test.feature_count == 2:
            lo = split.test.inputs.min(axis=0)
            hi = split.test.inputs.max(axis=0)
            grid = ev.decision_boundary_grid(
                model, ((lo[0], hi[0]), (lo[1], hi[1])), resolution=50
            )
            ev.grid_to_csv(grid, out / "boundary_grid.csv")
    return report


def sweep_accuracy(config: ExperimentConfig, ratios, seeds) -> list[dict]:
    """Accuracy-vs-training-size sweep: resplit, reselect centres, refit per cell."""
    if not config.is_classification:
        raise ConfigurationError("training-size sweeps require a classification dataset")

    def run_cell(ratio, seed):
        cell = replace(
            config,
            split_ratio=ratio,
            seeds=replace(config.seeds, split=seed, centres=seed + 1),
        )
        split = make_datasets(cell)
        if split.train.m < cell.resolved_n_centres():
            raise ConfigurationError(
                f"ratio {ratio} leaves {split.train.m} training points for "
                f"{cell.resolved_n_centres()} centres"
            )
        model = fit_model(cell, split.train)
        return ev.accuracy(net.classify(model, split.test.inputs), split.test.labels)

    return ev.training_size_sweep(run_cell, ratios, seeds)


def _mean_metric(config: ExperimentConfig, n_seeds: int, metric: str) -> dict:
    values = []
    for k in range(n_seeds):
        cfg = replace(
            config,
            seeds=Seeds(data=config.seeds.data + k, centres=config.seeds.centres + k,
                        entangler=config.seeds.entangler + k,
                        split=config.seeds.split + k),
        )
        report = run_experiment(cfg, write=False)
        values.append(getattr(report, metric))
    arr = np.asarray(values, dtype=float)
    return {
        "mean": float(arr.mean()),
        "std": float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
        "per_seed": [[k, float(v)] for k, v in enumerate(values)],
    }


def run_suite(preset: str, output_dir, n_seeds: int = 10) -> dict:
    """Run the config matrix behind a named table/figure and write a report."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    if preset == "table1":
        rows = []
        for dataset in INTERPOLATION:
            for model, n in (("qrbf", 3), ("qrbf", 4), ("qrbf", 5), ("crbf", 5)):
                cfg = ExperimentConfig(dataset=dataset, model=model, n_centres=n,
                                       output_dir=str(out))
                stats = _mean_metric(cfg, n_seeds, "mse")
                rows.append({"dataset": dataset, "model": f"{model} j={n}",
                             "mse_mean": stats["mean"], "mse_std": stats["std"],
                             "source": "computed"})
        for name, per_dataset in REFERENCE_TABLE1.items():
            for dataset, value in per_dataset.items():
                rows.append({"dataset": dataset, "model": name, "mse_mean": value,
                             "mse_std": None, "source": "reference"})
        doc = {"preset": preset, "rows": rows}
    elif preset in ("table2", "table3"):
        dataset = "spiral" if preset == "table2" else "iris"
        reference = REFERENCE_TABLE2 if preset == "table2" else REFERENCE_TABLE3
        rows = []
        for model in MODELS:
            cfg = ExperimentConfig(dataset=dataset, model=model, n_centres=50,
                                   output_dir=str(out))
            stats = _mean_metric(cfg, n_seeds, "accuracy")
            rows.append({"dataset": dataset, "model": f"{model} j=50",
                         "accuracy_mean": stats["mean"], "accuracy_std": stats["std"],
                         "source": "computed"})
        for name, value in reference.items():
            rows.append({"dataset": dataset, "model": name, "accuracy_mean": value,
                         "accuracy_std": None, "source": "reference"})
        doc = {"preset": preset, "rows": rows}
    elif preset == "fig8":
        ratios = [round(0.1 * k, 1) for k in range(1, 10)]
        seeds = list(range(n_seeds))
        doc = {"preset": preset, "models": {}}
        for model in MODELS:
            cfg = ExperimentConfig(dataset="spiral", model=model, n_centres=50,
                                   output_dir=str(out))
            rows = sweep_accuracy(cfg, ratios, seeds)
            ev.sweep_to_csv(rows, out / f"fig8_{model}.csv")
            doc["models"][model] = [
                {k: row[k] for k in ("ratio", "mean_accuracy", "std")} for row in rows
            ]
    else:
        raise UsageError(f"unknown preset {preset!r}; expected table1|table2|table3|fig8")
    write_json(doc, out / f"{preset}.json")
    if preset.startswith("table"):
        _rows_to_csv(doc["rows"], out / f"{preset}.csv")
    return doc


def _rows_to_csv(rows: list[dict], path) -> None:
    import csv

    keys = list(rows[0].keys())
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
