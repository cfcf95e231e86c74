"""Command-line entry point.

Subcommands: gen, fit, predict, eval, suite, sweep, grid. Every run is
seed-deterministic; config comes from a JSON file (--config) with individual
flags taking precedence, and seeds may also be set through the
QRBF_{DATA,CENTRES,ENTANGLER,SPLIT}_SEED environment variables.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import datasets as ds
from . import evaluation as ev
from . import network as net
from .errors import QrbfError, UsageError
from .experiments import (
    ExperimentConfig,
    Seeds,
    run_experiment,
    run_suite,
    sweep_accuracy,
    write_json,
)

ERROR_CODES = {
    "DomainError": 10,
    "ConfigurationError": 11,
    "CapabilityError": 12,
    "NumericError": 13,
    "IngestionError": 14,
    "UsageError": 15,
}


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--dataset", choices=["sine", "polynomial", "logistic", "spiral", "iris"])
    p.add_argument("--iris-path")
    p.add_argument("--model", choices=["qrbf", "crbf"])
    p.add_argument("--kernel", dest="kernel_kind",
                   choices=["quantum", "linear", "gaussian", "spline"])
    p.add_argument("--gamma", type=float)
    p.add_argument("--centre-strategy", choices=["uniform", "gaussian", "kmeans"])
    p.add_argument("--n-centres", type=int)
    p.add_argument("--alpha", help="'auto' or comma-separated per-feature values")
    p.add_argument("--alpha-mode", choices=["pi_over_max", "inv_max"])
    p.add_argument("--split-ratio", type=float)
    p.add_argument("--train-size", type=int)
    p.add_argument("--test-size", type=int)
    p.add_argument("--noise-sigma", type=float)
    p.add_argument("--theta-mode", choices=["normalized", "raw"])
    p.add_argument("--rcond", type=float)
    p.add_argument("--data-seed", type=int)
    p.add_argument("--centres-seed", type=int)
    p.add_argument("--entangler-seed", type=int)
    p.add_argument("--split-seed", type=int)
    p.add_argument("--output-dir")


def _config_from_args(args) -> ExperimentConfig:
    if args.config:
        config = ExperimentConfig.load(args.config)
    else:
        config = ExperimentConfig.from_dict({})
    overrides = {}
    for name in ("dataset", "iris_path", "model", "kernel_kind", "gamma",
                 "centre_strategy", "n_centres", "alpha_mode", "split_ratio",
                 "train_size", "test_size", "noise_sigma", "theta_mode", "rcond",
                 "output_dir"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "alpha", None) is not None:
        overrides["alpha"] = (
            "auto" if args.alpha == "auto"
            else [float(v) for v in args.alpha.split(",")]
        )
    seeds = config.seeds
    for name in ("data", "centres", "entangler", "split"):
        value = getattr(args, f"{name}_seed", None)
        if value is not None:
            seeds = replace(seeds, **{name: value})
    return replace(config, seeds=seeds, **overrides)


def _cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else 0
    if args.dataset in ("sine", "polynomial"):
        gen = ds.gen_sine if args.dataset == "sine" else ds.gen_polynomial
        kwargs = {"sampling": args.sampling}
        if args.noise_sigma is not None:
            kwargs["noise_sigma"] = args.noise_sigma
        data = gen(args.size, seed=seed, **kwargs)
    elif args.dataset == "logistic":
        kwargs = {}
        if args.noise_sigma is not None:
            kwargs["noise_sigma"] = args.noise_sigma
        data = ds.gen_logistic_map(args.size, seed=seed, **kwargs)
    elif args.dataset == "spiral":
        data = ds.gen_spiral(args.per_class, seed=seed, theta_mode=args.theta_mode)
    else:
        raise UsageError(f"gen does not support dataset {args.dataset!r}")
    ds.dataset_to_csv(data, args.out)
    print(f"wrote {data.m} rows to {args.out}")
    return 0


def _cmd_fit(args) -> int:
    from .experiments import fit_model, make_datasets

    config = _config_from_args(args)
    split = make_datasets(config)
    model = fit_model(config, split.train)
    net.save_model(model, args.out)
    print(f"fitted {config.model} on {split.train.m} points, saved to {args.out}")
    return 0


def _cmd_predict(args) -> int:
    model = net.load_model(args.model_file)
    data = ds.dataset_from_csv(args.data)
    predicted = net.predict(model, data.inputs)
    ds.dataset_to_csv(ds.Dataset(inputs=data.inputs, outputs=predicted), args.out)
    print(f"wrote {predicted.shape[0]} predictions to {args.out}")
    return 0


def _cmd_eval(args) -> int:
    config = _config_from_args(args)
    report = run_experiment(config)
    summary = {k: v for k, v in report.to_dict().items() if v is not None}
    print(json.dumps(summary, sort_keys=True))
    print(f"artifacts written to {config.output_dir}")
    return 0


def _cmd_suite(args) -> int:
    run_suite(args.preset, args.output_dir, n_seeds=args.n_seeds)
    print(f"{args.preset} reports written to {args.output_dir}")
    return 0


def _cmd_sweep(args) -> int:
    config = _config_from_args(args)
    ratios = [float(v) for v in args.ratios.split(",")]
    seeds = [int(v) for v in args.sweep_seeds.split(",")]
    rows = sweep_accuracy(config, ratios, seeds)
    ev.sweep_to_csv(rows, args.out)
    write_json({"config": config.to_dict(), "sweep": [
        {k: row[k] for k in ("ratio", "mean_accuracy", "std")} for row in rows
    ]}, str(args.out) + ".json")
    print(f"sweep written to {args.out}")
    return 0


def _cmd_grid(args) -> int:
    model = net.load_model(args.model_file)
    x_lo, x_hi, y_lo, y_hi = (float(v) for v in args.bounds.split(","))
    grid = ev.decision_boundary_grid(model, ((x_lo, x_hi), (y_lo, y_hi)), args.resolution)
    ev.grid_to_csv(grid, args.out)
    print(f"wrote {grid.shape[0]} grid rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrbf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a dataset CSV")
    p.add_argument("--dataset", required=True,
                   choices=["sine", "polynomial", "logistic", "spiral"])
    p.add_argument("--size", type=int, default=100)
    p.add_argument("--per-class", type=int, default=50)
    p.add_argument("--seed", type=int)
    p.add_argument("--noise-sigma", type=float)
    p.add_argument("--sampling", choices=["grid", "random"], default="grid")
    p.add_argument("--theta-mode", choices=["normalized", "raw"], default="normalized")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("fit", help="fit a model and save it as JSON")
    _add_config_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("predict", help="predict with a saved model on a dataset CSV")
    p.add_argument("--model-file", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("eval", help="run a full experiment and write artifacts")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("suite", help="run a named preset (table1|table2|table3|fig8)")
    p.add_argument("--preset", required=True)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--n-seeds", type=int, default=10)
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("sweep", help="accuracy vs training-size sweep")
    _add_config_flags(p)
    p.add_argument("--ratios", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    p.add_argument("--sweep-seeds", default=",".join(str(s) for s in range(10)))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("grid", help="decision-boundary grid from a saved model")
    p.add_argument("--model-file", required=True)
    p.add_argument("--bounds", required=True, help="x_low,x_high,y_low,y_high")
    p.add_argument("--resolution", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_grid)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QrbfError as exc:
        code = ERROR_CODES.get(type(exc).__name__, 1)
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
