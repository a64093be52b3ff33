"""``tropsvm`` command line.

Exit status: 0 on success, 2 for unusable input, 3 for numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np

from .. import generalization
from ..functional import BoundaryArgmaxError, ConvergenceError
from ..hyperplane import TropicalHyperplane, dist_to_hyperplane
from ..lp import LPNumericalError
from ..svm import InseparableError, accuracy, predict_many, train_hard, train_heuristic
from ..tropical_core import trop_distance
from . import io as tio
from .plot import Series, Table, emit_plot
from .runners import (ExperimentConfig, run_bound_experiment, run_curse_experiment,
                      run_functional_experiment, run_scaling_experiment,
                      run_tuning_experiment, s_from_dprime)

log = logging.getLogger("tropsvm")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


def _vector(text: str) -> np.ndarray:
    try:
        v = np.array([float(t) for t in text.replace(" ", "").split(",") if t])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if v.size < 2:
        raise argparse.ArgumentTypeError("need at least two coordinates")
    return v


def _ints(text: str) -> tuple:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _out(args, name: str) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out / name


def _print_table(table: Table) -> None:
    sys.stdout.write(table.to_csv())


def _config(args, **over) -> ExperimentConfig:
    s = args.s if args.dprime is None else s_from_dprime(args.dprime)
    return ExperimentConfig(seed=args.seed, trials=args.trials, dims=args.dims,
                            samples_per_class=args.n_per_class, s=s, eta=args.eta,
                            holdout=args.holdout, workers=args.workers, **over)


# --------------------------------------------------------------------------
# subcommands


def cmd_dist(args) -> int:
    if args.v.size != args.w.size:
        raise tio.InputError(f"dimension mismatch: {args.v.size} vs {args.w.size}")
    if args.hyperplane:
        value = dist_to_hyperplane(TropicalHyperplane(args.w), args.v)
    else:
        value = trop_distance(args.v, args.w)
    print(format(value, ".17g"))
    return EXIT_OK


def cmd_train(args) -> int:
    data = tio.read_dataset(args.data)
    if args.heuristic:
        validation = tio.read_dataset(args.validation) if args.validation else data
        model = train_heuristic(data, validation, C=args.C)
    else:
        model = train_hard(data)
    tio.write_model(args.model, model)
    log.info("trained: margin %.6g, training accuracy %.4f", model.margin, accuracy(model, data))
    sys.stdout.write(tio.model_to_text(model))
    return EXIT_OK


def cmd_predict(args) -> int:
    model = tio.read_model(args.model)
    data = tio.read_dataset(args.data)
    if data.dim != model.dim:
        raise tio.InputError(f"dimension mismatch: model {model.dim}, data {data.dim}")
    tio.check_labels(model, data.labels)
    pred = predict_many(model, data.points)
    lines = [str(p) for p in pred]
    acc = float(np.mean([p == y for p, y in zip(pred, data.labels)]))
    if args.predictions:
        with open(args.predictions, "w", encoding="utf-8", newline="") as fh:
            fh.write("predicted\n" + "\n".join(lines) + "\n")
    else:
        print("\n".join(lines))
    print(f"accuracy: {acc:.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_curse(args) -> int:
    cfg = _config(args)
    table = run_curse_experiment(cfg)
    title = f"d' = {cfg.dprime:.3g}, N = {cfg.samples_per_class} per class"
    name = f"curse_dprime{cfg.dprime:.3g}_N{cfg.samples_per_class}".replace(".", "p")
    emit_plot(table, _out(args, name), "d",
              [Series("tropical_hit", "tropical_sd", "tropical SVM"),
               Series("classical_hit", "classical_sd", "classical SVM")],
              title=title, ylabel="test hit rate")
    _print_table(table)
    return EXIT_OK


def cmd_bound(args) -> int:
    cfg = _config(args)
    table = run_bound_experiment(cfg)
    emit_plot(table, _out(args, f"bound_N{cfg.samples_per_class}"), "d",
              [Series("hit", "hit_sd", "tropical SVM"),
               Series("classical_hit", "classical_sd", "classical SVM"),
               Series("lower_bound", None, "VC lower bound", dashed=True)],
              title=f"N = {cfg.samples_per_class} per class, eta = {cfg.eta}", ylabel="hit rate")
    _print_table(table)
    return EXIT_OK


def cmd_scaling(args) -> int:
    table = run_scaling_experiment(args.ns, args.trials, args.seed)
    base = _out(args, "scaling")
    emit_plot(table, base.with_name("scaling_trop"), "n",
              [Series("mean_trop", "se_trop", "simulation"),
               Series("theory_trop", None, "5 + gamma + log n", dashed=True)],
              logx=True, ylabel="tropical distance")
    emit_plot(table, base.with_name("scaling_euclid"), "n",
              [Series("mean_euclid", "se_euclid", "simulation"),
               Series("sqrt_n", None, "sqrt(n)", dashed=True)],
              logx=True, ylabel="Euclidean distance")
    _print_table(table)
    return EXIT_OK


def cmd_tuning(args) -> int:
    table = run_tuning_experiment(args.points)
    for kind in ("shift", "lift"):
        sub = Table(table.columns, [r for r in table.rows if r[0] == kind])
        emit_plot(sub, _out(args, f"tuning_{kind}"), "amount",
                  [Series("trop", None, "tropical"), Series("euclid", None, "Euclidean")],
                  xlabel=f"{kind} amount", ylabel="distance from the centred curve")
    _print_table(table)
    return EXIT_OK


def cmd_functional(args) -> int:
    table = run_functional_experiment(args.epsilon)
    path = _out(args, "functional.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(table.to_csv())
    _print_table(table)
    return EXIT_OK


def cmd_radon(args) -> int:
    if args.data:
        with open(args.data, encoding="utf-8") as fh:
            X, _ = tio.parse_dataset(fh.read(), args.data)
        sets = [X]
    else:
        rng = np.random.default_rng(args.seed)
        sets = [rng.standard_normal((args.dim + 1, args.dim)) for _ in range(args.count)]
    table = Table(("set", "part_a", "part_b", "witness", "separable"))
    for k, X in enumerate(sets):
        w = generalization.radon_witness(X)
        sep = generalization.shatter_check(X, w.labeling(len(X)))
        table.add(k, " ".join(str(i + 1) for i in w.part_a), " ".join(str(i + 1) for i in w.part_b),
                  " ".join(format(v, ".10g") for v in w.point), sep)
    _print_table(table)
    return EXIT_OK


def cmd_vcbound(args) -> int:
    b = generalization.vc_bound(args.n, args.d, args.eta)
    print(f"penalty: {b:.17g}")
    if args.train_hit is not None:
        lower = generalization.hit_rate_lower_bound(args.train_hit, args.n, args.d, args.eta)
        print(f"lower_bound: {lower:.17g}")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropsvm", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="master random seed (default 0)")
    p.add_argument("--out", default="results", help="output directory for CSV/SVG files")
    p.add_argument("--trials", type=int, default=200, help="Monte-Carlo trials (default 200)")
    p.add_argument("--workers", type=int, default=1, help="worker processes for trials")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("dist", help="tropical distance between two points, or to a hyperplane")
    q.add_argument("v", type=_vector, help="comma-separated coordinates")
    q.add_argument("w", type=_vector, help="comma-separated coordinates (or ω with --hyperplane)")
    q.add_argument("--hyperplane", action="store_true", help="treat w as the normal vector ω")
    q.set_defaults(func=cmd_dist)

    q = sub.add_parser("train", help="train a tropical SVM on a dataset CSV")
    q.add_argument("data")
    q.add_argument("--model", required=True, help="where to write the model file")
    q.add_argument("--heuristic", action="store_true", help="error-tolerant binary trainer")
    q.add_argument("--validation", help="validation CSV for the heuristic trainer")
    q.add_argument("-C", type=float, default=5.0, help="slack penalty for the heuristic trainer")
    q.set_defaults(func=cmd_train)

    q = sub.add_parser("predict", help="classify the points of a dataset CSV")
    q.add_argument("model")
    q.add_argument("data")
    q.add_argument("--predictions", help="write predicted labels here instead of stdout")
    q.set_defaults(func=cmd_predict)

    def experiment(name, help_, func, n_default, dims_default, s_default):
        q = sub.add_parser(name, help=help_)
        q.add_argument("--dims", type=_ints, default=dims_default)
        q.add_argument("--n-per-class", type=int, default=n_default)
        q.add_argument("--s", type=float, default=s_default, help="mean offset s (d' = 2 s sqrt 2)")
        q.add_argument("--dprime", type=float, help="class separation d'; overrides --s")
        q.add_argument("--eta", type=float, default=0.1)
        q.add_argument("--holdout", action="store_true",
                       help="select the sector pair on a separate validation split")
        q.set_defaults(func=func)

    experiment("exp-curse", "accuracy against dimension, tropical vs classical", cmd_curse,
               5, (3, 10, 20, 50, 100), 5.0)
    experiment("exp-bound", "hit rates against the VC lower bound", cmd_bound,
               100, (3, 10, 20, 50, 100), math.sqrt(2.0))

    q = sub.add_parser("exp-scaling", help="extreme-value scaling of random tuning curves")
    q.add_argument("--ns", type=_ints, default=(10, 100, 1000, 10000))
    q.set_defaults(func=cmd_scaling)

    q = sub.add_parser("exp-tuning", help="shifted and lifted Gaussian tuning curves")
    q.add_argument("--points", type=int, default=101)
    q.set_defaults(func=cmd_tuning)

    q = sub.add_parser("exp-functional", help="function-space distance examples")
    q.add_argument("--epsilon", type=float, default=1.0)
    q.set_defaults(func=cmd_functional)

    q = sub.add_parser("radon", help="tropical Radon partitions of d+1 points")
    q.add_argument("--data", help="dataset CSV with d+1 rows (labels ignored)")
    q.add_argument("--dim", type=int, default=3)
    q.add_argument("--count", type=int, default=10, help="random sets when no --data")
    q.set_defaults(func=cmd_radon)

    q = sub.add_parser("bound", help="evaluate the VC generalization penalty")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--eta", type=float, default=0.1)
    q.add_argument("--train-hit", type=float)
    q.set_defaults(func=cmd_vcbound)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    try:
        return args.func(args)
    except (tio.InputError, InseparableError, FileNotFoundError, IsADirectoryError,
            BoundaryArgmaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (LPNumericalError, ConvergenceError, generalization.RadonSearchError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
