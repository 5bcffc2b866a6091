"""Command-line surface.

Subcommands: synth (generate a dataset file), run (stream a dataset
through the engine), knn (leave-one-out kNN diagnostic), sweep (grid of
engine runs), inspect (header and norm summary).

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .baft import inspect_dataset, read_dataset, write_dataset
from .core import Aggregation, Config, Mode
from .engine import Engine
from .errors import StreamAdaptError
from .evaluation import knn_eval, sweep, sweep_to_csv, sweep_to_json
from .projection import build_projection
from .synth import SynthSpec, synth_generate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def _add_engine_flags(p):
    p.add_argument("--alpha", type=float, default=0.5,
                   help="confidence-weight order in (0, 1)")
    p.add_argument("--beta", type=float, default=2.0,
                   help="text-vs-clustering fusion balance")
    p.add_argument("--temperature", type=float, default=100.0,
                   help="logit scale on cosines")
    p.add_argument("--warmup-mult", type=float, default=10.0,
                   help="warm-up lasts ceil(mult * classes) examples")
    p.add_argument("--max-rank", type=int, default=150,
                   help="cap on retained projection basis vectors")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="full")
    p.add_argument("--aggregation", choices=[a.value for a in Aggregation],
                   default="renyi")
    p.add_argument("--views", type=int, default=64,
                   help="views consumed per record (view 0 first)")


def _config_from_args(args):
    return Config(
        alpha=args.alpha,
        beta=args.beta,
        temperature=args.temperature,
        warmup_multiplier=args.warmup_mult,
        max_projection_rank=args.max_rank,
        n_views=args.views,
        mode=Mode(args.mode),
        aggregation=Aggregation(args.aggregation),
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="streamadapt",
        description="Streaming test-time adaptation over precomputed embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic dataset file")
    p.add_argument("--classes", type=int, default=20)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--n", type=int, default=2000, help="number of examples")
    p.add_argument("--views", type=int, default=8, help="views per example")
    p.add_argument("--kappa", type=float, default=30.0,
                   help="concentration around class means")
    p.add_argument("--rotation", type=float, default=35.0,
                   help="text-embedding mismatch angle in degrees")
    p.add_argument("--noise", type=float, default=0.15, help="per-view noise scale")
    p.add_argument("--skew", type=float, default=0.0,
                   help="Zipf exponent over class frequencies, 0 = uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output .baft path")

    p = sub.add_parser("run", help="stream a dataset file through the engine")
    p.add_argument("dataset", help=".baft path")
    _add_engine_flags(p)
    p.add_argument("--shuffle-seed", type=int, default=None,
                   help="shuffle record order; omit to keep file order")
    p.add_argument("--report", help="write the run report JSON here")
    p.add_argument("--predictions", help="write per-example JSONL here")

    p = sub.add_parser("knn", help="leave-one-out kNN over view 0 of each record")
    p.add_argument("dataset", help=".baft path (labels required)")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--projected", choices=["true", "false"], default="false",
                   help="evaluate in the projection space")
    p.add_argument("--max-rank", type=int, default=150)

    p = sub.add_parser("sweep", help="run the engine over a hyperparameter grid")
    p.add_argument("dataset", help=".baft path")
    p.add_argument("--grid", required=True,
                   help="JSON file mapping axis names to value lists")
    p.add_argument("--csv", help="write the table as CSV here (default stdout)")
    p.add_argument("--json", help="also write the table as JSON here")

    p = sub.add_parser("inspect", help="print header fields and norm summary")
    p.add_argument("dataset", help=".baft path")
    return parser


def _cmd_synth(args):
    spec = SynthSpec(
        n_classes=args.classes,
        dimension=args.dim,
        kappa=args.kappa,
        text_rotation_deg=args.rotation,
        n_examples=args.n,
        n_views=args.views,
        view_noise=args.noise,
        label_skew=args.skew,
        seed=args.seed,
    )
    class_model, records, _ = synth_generate(spec)
    write_dataset(args.out, class_model, records)
    print(f"wrote {args.out}: J={args.classes} D={args.dim} B={args.views} N={args.n}")
    return EXIT_OK


def _cmd_run(args):
    class_model, records = read_dataset(args.dataset)
    config = _config_from_args(args)
    if args.shuffle_seed is not None:
        records = list(records)
        order = np.random.default_rng(args.shuffle_seed).permutation(len(records))
        records = [records[i] for i in order]
    engine = Engine(class_model, config)

    sink = None
    pred_file = open(args.predictions, "w") if args.predictions else None
    if pred_file is not None:
        def sink(pred):
            pred_file.write(json.dumps({
                "example_id": pred.example_id,
                "predicted_class": pred.predicted_class,
                "fused_probs_top5": pred.top_probs(5),
            }) + "\n")
    try:
        report = engine.run_stream(records, sink=sink)
    finally:
        if pred_file is not None:
            pred_file.close()

    if args.report:
        with open(args.report, "w") as f:
            f.write(report.to_json())
            f.write("\n")
    acc = "n/a" if report.top1_accuracy is None else f"{report.top1_accuracy:.4f}"
    print(f"examples={report.n_examples} top1={acc} "
          f"warmup={report.warmup_boundary} backend={report.kernel_backend} "
          f"duration_ms={report.duration_ms:.1f}")
    return EXIT_OK


def _cmd_knn(args):
    class_model, records = read_dataset(args.dataset)
    embeddings, labels = [], []
    for rec in records:
        if rec.label is None:
            raise StreamAdaptError(f"record {rec.example_id} is unlabeled; kNN needs labels")
        embeddings.append(rec.views[0])
        labels.append(rec.label)
    proj = None
    if args.projected == "true":
        proj = build_projection(class_model, args.max_rank)
    acc = knn_eval(np.asarray(embeddings), np.asarray(labels), k=args.k, proj=proj)
    print(f"knn k={args.k} projected={args.projected} accuracy={acc:.6f}")
    return EXIT_OK


def _cmd_sweep(args):
    with open(args.grid) as f:
        grid = json.load(f)
    if not isinstance(grid, dict):
        raise ValueError("grid file must hold a JSON object of axis -> values")
    class_model, records = read_dataset(args.dataset)
    records = list(records)
    rows = sweep(grid, class_model, records)
    axes = list(grid.keys())
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            sweep_to_csv(rows, axes, f)
    else:
        sweep_to_csv(rows, axes, sys.stdout)
    if args.json:
        with open(args.json, "w") as f:
            sweep_to_json(rows, f)
    return EXIT_OK


def _cmd_inspect(args):
    print(json.dumps(inspect_dataset(args.dataset), indent=2))
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "run": _cmd_run,
    "knn": _cmd_knn,
    "sweep": _cmd_sweep,
    "inspect": _cmd_inspect,
}


def cli_main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 on --help
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StreamAdaptError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
