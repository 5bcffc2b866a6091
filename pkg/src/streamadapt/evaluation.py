"""Desk-scale evaluation: leave-one-out kNN and hyperparameter sweeps."""

from __future__ import annotations

import csv
import itertools
import json

import numpy as np

from . import kernels
from .core import Aggregation, Config, Mode
from .engine import Engine
from .errors import DimensionMismatchError, StreamAdaptError, TooFewExamplesError
from .projection import Projector

# grid axis name -> Config field and coercion
_AXES = {
    "alpha": ("alpha", float),
    "beta": ("beta", float),
    "temperature": ("temperature", float),
    "n_views": ("n_views", int),
    "mode": ("mode", Mode),
    "aggregation": ("aggregation", Aggregation),
}


def knn_eval(embeddings, labels, k=5, proj: Projector | None = None):
    """Leave-one-out k-nearest-neighbor accuracy under cosine similarity.

    Majority vote over the k nearest; ties go to the lowest class index.
    With proj given, rows are projected (and renormalized) first; the
    vote then happens in the projection space.
    """
    x = np.asarray(embeddings, dtype=np.float64)
    labels = np.asarray(labels)
    if x.ndim != 2:
        raise DimensionMismatchError("embeddings must be a 2-d array")
    n = x.shape[0]
    if labels.shape != (n,):
        raise DimensionMismatchError("labels must align with embeddings rows")
    if n <= k:
        raise TooFewExamplesError(f"need more than k={k} examples, got {n}")
    if np.any(labels < 0):
        raise DimensionMismatchError("labels must be non-negative")

    unit, _ = kernels.normalize_rows(x)
    if proj is not None:
        unit, _ = proj.project_rows(unit)

    sims = unit @ unit.T
    np.fill_diagonal(sims, -np.inf)
    # stable sort so equal similarities resolve to the lowest row index
    neighbors = np.argsort(-sims, axis=1, kind="stable")[:, :k]

    n_classes = int(labels.max()) + 1
    correct = 0
    for i in range(n):
        votes = np.bincount(labels[neighbors[i]], minlength=n_classes)
        correct += int(votes.argmax()) == labels[i]
    return correct / n


def sweep(config_grid: dict, class_model, records, base_config: Config | None = None):
    """Run the engine once per point of a cartesian hyperparameter grid.

    config_grid maps axis names (alpha, beta, temperature, n_views, mode,
    aggregation) to value lists. Rows come back in product order over the
    grid's own key order. A failing cell records its error message and a
    missing accuracy instead of aborting the remaining cells.
    """
    if not config_grid:
        raise ValueError("config grid must have at least one axis")
    axes = list(config_grid.keys())
    for axis in axes:
        if axis not in _AXES:
            raise ValueError(f"unknown grid axis {axis!r}")
        if not config_grid[axis]:
            raise ValueError(f"grid axis {axis!r} has no values")
    base = base_config or Config()

    rows = []
    for combo in itertools.product(*(config_grid[a] for a in axes)):
        overrides = {}
        for axis, raw in zip(axes, combo):
            field, coerce = _AXES[axis]
            overrides[field] = coerce(raw)
        row = {axis: value for axis, value in zip(axes, combo)}
        try:
            config = Config(**{**base.to_dict(), **overrides})
            engine = Engine(class_model, config)
            report = engine.run_stream(records)
            row["accuracy"] = report.top1_accuracy
            row["postwarmup_accuracy"] = report.postwarmup_accuracy
        except (StreamAdaptError, ValueError) as exc:
            row["accuracy"] = None
            row["error"] = str(exc)
        rows.append(row)
    return rows


def sweep_to_csv(rows, axes, fileobj):
    """Emit sweep rows as CSV: axis columns then accuracy (empty on failure)."""
    writer = csv.writer(fileobj)
    writer.writerow(list(axes) + ["accuracy"])
    for row in rows:
        acc = row.get("accuracy")
        writer.writerow(
            [_csv_value(row[a]) for a in axes] + ["" if acc is None else repr(acc)]
        )


def _csv_value(v):
    # enums serialize by value so the CSV round-trips into the CLI flags
    return v.value if hasattr(v, "value") else v


def sweep_to_json(rows, fileobj):
    out = []
    for row in rows:
        out.append({k: _csv_value(v) for k, v in row.items()})
    json.dump(out, fileobj, indent=2)
    fileobj.write("\n")
