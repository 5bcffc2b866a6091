"""The streaming adaptation loop.

Per example: every view is normalized and scored against the text
embeddings (text branch) and, after projection, against the online
centroids (clustering branch). Each branch's view predictions collapse
into one vector via confidence weighting, the two branches fuse with a
fixed balance factor, and the winning class absorbs the mean projected
view into its centroid. For the first ceil(warmup_multiplier * J)
examples the fused output is the text branch alone while the centroids
accumulate evidence.

Order matters and is accepted: the centroid state depends on every
prediction made so far. For a fixed record order the run is fully
deterministic; reports expose a canonical byte form (wall-clock excluded)
so determinism can be asserted bytewise.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time

import numpy as np

from . import kernels
from .aggregation import WeightingScheme, aggregate_views, fuse_branches, view_weights
from .clustering import CentroidBank, init_centroids
from .core import Aggregation, ClassModel, Config, Mode, StreamRecord
from .errors import (
    DimensionMismatchError,
    StreamAdaptError,
    StreamError,
    ZeroVectorError,
)
from .projection import DEGENERATE_TOL, Projector, build_projection


def text_prediction(v, class_model: ClassModel, temperature):
    """Softmax over temperature-scaled cosines against the text embeddings."""
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ZeroVectorError("text prediction of a zero vector")
    logits = (class_model.unit_text_embeddings.astype(np.float64) @ v) / norm
    return kernels.softmax_rows(logits.reshape(1, -1), temperature)[0]


def cluster_prediction(v_hat, bank: CentroidBank, temperature):
    """Softmax over temperature-scaled cosines against the centroids."""
    return kernels.softmax_rows(bank.similarities(v_hat).reshape(1, -1), temperature)[0]


@dataclasses.dataclass
class PredictionRecord:
    """Everything the engine decided about one example."""

    example_id: int
    fused: np.ndarray  # (J,)
    predicted_class: int
    warmup_active: bool
    per_view_text_preds: np.ndarray  # (B, J)
    per_view_cluster_preds: np.ndarray | None  # (n_defined, J), None if no view projects
    cluster_view_defined: np.ndarray  # (B,) bool

    def top_probs(self, k=5):
        """(class, probability) pairs for the k most probable classes."""
        k = min(k, self.fused.shape[0])
        order = np.argsort(-self.fused, kind="stable")[:k]
        return [(int(j), float(self.fused[j])) for j in order]


@dataclasses.dataclass
class RunReport:
    """Summary of a full pass over a stream."""

    config: dict
    n_examples: int
    n_labeled: int
    n_correct: int
    top1_accuracy: float | None
    n_postwarmup_labeled: int
    n_postwarmup_correct: int
    postwarmup_accuracy: float | None
    warmup_boundary: int
    n_warmup_examples: int
    per_class_counts: list
    centroid_norms: list
    degenerate_views: int
    suppressed_examples: int
    skipped_centroid_updates: int
    kernel_backend: str
    duration_ms: float

    def to_json_dict(self, include_timing=True):
        d = dataclasses.asdict(self)
        if not include_timing:
            del d["duration_ms"]
        # accuracy is absent, not null, when nothing was labeled
        for key in ("top1_accuracy", "postwarmup_accuracy"):
            if d[key] is None:
                del d[key]
        return d

    def canonical_bytes(self):
        """Deterministic serialization: everything except wall-clock time."""
        return json.dumps(
            self.to_json_dict(include_timing=False), sort_keys=True, separators=(",", ":")
        ).encode("utf-8")

    def to_json(self, indent=2):
        return json.dumps(self.to_json_dict(), indent=indent)


class Engine:
    """Holds the model, projector, centroid bank, and warm-up position."""

    def __init__(self, class_model: ClassModel, config: Config | None = None,
                 projector: Projector | None = None, bank: CentroidBank | None = None):
        self.class_model = class_model
        self.config = config or Config()
        self.projector = projector or build_projection(
            class_model, self.config.max_projection_rank
        )
        self.bank = bank or init_centroids(
            self.projector, class_model, self.config.prior_count
        )
        self.warmup_limit = math.ceil(self.config.warmup_multiplier * class_model.class_count)
        self.examples_seen = 0
        self.degenerate_views = 0
        self.suppressed_examples = 0
        # float64 copies of the classifier rows; storage stays float32
        self._unit_text = class_model.unit_text_embeddings.astype(np.float64)
        self._scheme = WeightingScheme(
            kind=self.config.aggregation, alpha=self.config.alpha
        )
        self._uniform_scheme = WeightingScheme(kind=Aggregation.UNIFORM)

    @property
    def warmup_active(self):
        return self.examples_seen < self.warmup_limit

    def process_example(self, record: StreamRecord) -> PredictionRecord:
        cfg = self.config
        if record.dimension != self.class_model.dimension:
            raise DimensionMismatchError(
                f"record dimension {record.dimension} != model dimension "
                f"{self.class_model.dimension}"
            )
        views = record.views[: cfg.n_views].astype(np.float64)

        unit_views, norms = kernels.normalize_rows(views)
        if np.any(norms < 1e-12):
            bad = int(np.argmin(norms))
            raise ZeroVectorError(f"view {bad} has zero norm")

        text_logits = unit_views @ self._unit_text.T
        p_text_views = kernels.softmax_rows(text_logits, cfg.temperature)

        projected, proj_norms = self.projector.project_rows(unit_views)
        defined = proj_norms >= DEGENERATE_TOL
        n_defined = int(defined.sum())
        self.degenerate_views += projected.shape[0] - n_defined

        p_cluster_views = None
        if n_defined:
            v_hat_views = projected[defined]
            cluster_logits = v_hat_views @ self.bank.centroids.T
            p_cluster_views = kernels.softmax_rows(cluster_logits, cfg.temperature)
        else:
            self.suppressed_examples += 1

        scheme = self._uniform_scheme if cfg.mode is Mode.AVG else self._scheme
        p_text = aggregate_views(p_text_views, view_weights(p_text_views, scheme))
        p_cluster = None
        if p_cluster_views is not None:
            p_cluster = aggregate_views(
                p_cluster_views, view_weights(p_cluster_views, scheme)
            )

        warmup = self.warmup_active
        if cfg.mode is Mode.TE or p_cluster is None or warmup:
            fused = p_text.copy()
        elif cfg.mode is Mode.OC:
            fused = p_cluster.copy()
        else:  # FULL or AVG
            fused = fuse_branches(p_text, 1.0, p_cluster, float(n_defined), cfg.beta)

        predicted = int(np.argmax(fused))

        if n_defined:
            v_hat = v_hat_views.mean(axis=0)
            self.bank.update(predicted, v_hat)
        self.examples_seen += 1

        return PredictionRecord(
            example_id=record.example_id,
            fused=fused,
            predicted_class=predicted,
            warmup_active=warmup,
            per_view_text_preds=p_text_views,
            per_view_cluster_preds=p_cluster_views,
            cluster_view_defined=defined,
        )

    def run_stream(self, records, sink=None) -> RunReport:
        """Process records strictly in order; emit each prediction to sink.

        Fails fast: the first malformed record aborts the run with its
        example id attached (silently skipping records would corrupt any
        accuracy comparison).
        """
        start = time.perf_counter()
        n = n_labeled = n_correct = n_warmup = 0
        n_post_labeled = n_post_correct = 0
        j = self.class_model.class_count
        for record in records:
            try:
                if record.label is not None and not 0 <= record.label < j:
                    raise DimensionMismatchError(
                        f"label {record.label} out of range for {j} classes"
                    )
                pred = self.process_example(record)
            except StreamAdaptError as exc:
                raise StreamError(
                    f"record {record.example_id} failed: {exc}", record.example_id
                ) from exc
            if sink is not None:
                sink(pred)
            n += 1
            if pred.warmup_active:
                n_warmup += 1
            if record.label is not None:
                n_labeled += 1
                correct = pred.predicted_class == record.label
                n_correct += correct
                if not pred.warmup_active:
                    n_post_labeled += 1
                    n_post_correct += correct
        duration_ms = (time.perf_counter() - start) * 1000.0
        diag = self.bank.diagnostics()
        return RunReport(
            config=self.config.to_dict(),
            n_examples=n,
            n_labeled=n_labeled,
            n_correct=n_correct,
            top1_accuracy=(n_correct / n_labeled) if n_labeled else None,
            n_postwarmup_labeled=n_post_labeled,
            n_postwarmup_correct=n_post_correct,
            postwarmup_accuracy=(n_post_correct / n_post_labeled) if n_post_labeled else None,
            warmup_boundary=self.warmup_limit,
            n_warmup_examples=n_warmup,
            per_class_counts=diag["per_class_counts"],
            centroid_norms=diag["centroid_norms"],
            degenerate_views=self.degenerate_views,
            suppressed_examples=self.suppressed_examples,
            skipped_centroid_updates=diag["skipped_updates"],
            kernel_backend=kernels.BACKEND,
            duration_ms=duration_ms,
        )
