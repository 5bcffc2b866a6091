"""Shared vector math, model containers, and run configuration.

Embeddings are plain NumPy arrays: float32 for storage (matching typical
embedding exports), float64 for every accumulation. All containers are
frozen after construction and safe to share across threads.
"""

from __future__ import annotations

import dataclasses
import enum
import math

import numpy as np

from .errors import DimensionMismatchError, ZeroVectorError

ZERO_NORM_TOL = 1e-12


def as_embedding_matrix(values, name="embeddings"):
    """Validate and return a C-contiguous float32 (rows, D) matrix."""
    arr = np.ascontiguousarray(values, dtype=np.float32)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be a 2-D array, got shape {arr.shape}")
    if arr.shape[1] < 2:
        raise DimensionMismatchError(f"{name} need dimension >= 2, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contain non-finite entries")
    return arr


def normalize(v):
    """Return v / ||v||_2 as float64.

    Raises ZeroVectorError when ||v||_2 < 1e-12.
    """
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    norm = math.sqrt(float(np.dot(v, v)))
    if norm < ZERO_NORM_TOL:
        raise ZeroVectorError(f"cannot normalize vector with norm {norm:.3e}")
    return v / norm


def cosine(u, v):
    """Cosine similarity of two vectors, clipped into [-1, 1]."""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    if u.shape != v.shape:
        raise DimensionMismatchError(f"cosine of shapes {u.shape} and {v.shape}")
    nu = math.sqrt(float(np.dot(u, u)))
    nv = math.sqrt(float(np.dot(v, v)))
    if nu < ZERO_NORM_TOL or nv < ZERO_NORM_TOL:
        raise ZeroVectorError("cosine undefined for (near-)zero vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def _freeze(arr):
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True)
class ClassModel:
    """Per-class text embeddings: the zero-shot classifier.

    `text_embeddings` holds the raw multi-template averages; the unit rows
    are precomputed once since every similarity downstream is cosine.
    """

    text_embeddings: np.ndarray  # (J, D) float32, raw template averages
    unit_text_embeddings: np.ndarray  # (J, D) float32, L2-normalized rows
    class_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.text_embeddings.shape[0] < 2:
            raise DimensionMismatchError("need at least 2 classes")
        if self.class_names is not None and len(self.class_names) != self.class_count:
            raise DimensionMismatchError("class_names length does not match class count")
        _freeze(self.text_embeddings)
        _freeze(self.unit_text_embeddings)

    @classmethod
    def from_text_embeddings(cls, text_embeddings, class_names=None):
        raw = as_embedding_matrix(text_embeddings, "text embeddings")
        raw64 = raw.astype(np.float64)
        norms = np.linalg.norm(raw64, axis=1)
        if np.any(norms < ZERO_NORM_TOL):
            bad = int(np.argmin(norms))
            raise ZeroVectorError(f"text embedding for class {bad} has zero norm")
        unit = (raw64 / norms[:, None]).astype(np.float32)
        names = tuple(class_names) if class_names is not None else None
        return cls(raw, unit, names)

    @property
    def class_count(self):
        return self.text_embeddings.shape[0]

    @property
    def dimension(self):
        return self.text_embeddings.shape[1]


@dataclasses.dataclass(frozen=True)
class StreamRecord:
    """One test example: B embedded views, view 0 being the un-augmented one."""

    example_id: int
    views: np.ndarray  # (B, D) float32
    label: int | None = None

    def __post_init__(self):
        views = as_embedding_matrix(self.views, "views")
        if views.shape[0] < 1:
            raise DimensionMismatchError("a record needs at least one view")
        object.__setattr__(self, "views", _freeze(views))
        if self.label is not None and self.label < 0:
            raise ValueError(f"label must be >= 0 when present, got {self.label}")

    @property
    def view_count(self):
        return self.views.shape[0]

    @property
    def dimension(self):
        return self.views.shape[1]


class Mode(str, enum.Enum):
    """Which branches feed the fused output."""

    TE = "te"  # text-embedding branch only
    OC = "oc"  # online-clustering branch (text during warm-up)
    FULL = "full"  # both branches, beta-weighted
    AVG = "avg"  # both branches, uniform view weights


class Aggregation(str, enum.Enum):
    """Per-view reliability weighting used when merging view predictions."""

    UNIFORM = "uniform"
    MAX_PROB = "max_prob"
    ENTROPY_THRESHOLD = "entropy_threshold"
    NORM_ENTROPY = "norm_entropy"
    RENYI = "renyi"


@dataclasses.dataclass(frozen=True)
class Config:
    """Engine hyperparameters.

    alpha: order of the confidence weight (0 < alpha < 1)
    beta: text-vs-clustering balance in the fused output
    temperature: logit scale applied to cosines before softmax
    warmup_multiplier: clustering joins the fused output after
        ceil(warmup_multiplier * J) examples
    max_projection_rank: cap on retained basis vectors (>= 2)
    n_views: number of views consumed per record (view 0 first)
    prior_count: initial per-class counter; 0 means the first assigned
        example fully replaces the text-derived centroid
    """

    alpha: float = 0.5
    beta: float = 2.0
    temperature: float = 100.0
    warmup_multiplier: float = 10.0
    max_projection_rank: int = 150
    n_views: int = 64
    mode: Mode = Mode.FULL
    aggregation: Aggregation = Aggregation.RENYI
    seed: int = 0
    prior_count: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.beta <= 0.0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if self.temperature <= 0.0:
            raise ValueError(f"temperature must be > 0, got {self.temperature}")
        if self.max_projection_rank < 2:
            raise ValueError(f"max_projection_rank must be >= 2, got {self.max_projection_rank}")
        if self.n_views < 1:
            raise ValueError(f"n_views must be >= 1, got {self.n_views}")
        if self.warmup_multiplier < 0.0:
            raise ValueError(f"warmup_multiplier must be >= 0, got {self.warmup_multiplier}")
        if self.prior_count < 0.0:
            raise ValueError(f"prior_count must be >= 0, got {self.prior_count}")
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "aggregation", Aggregation(self.aggregation))

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["mode"] = self.mode.value
        d["aggregation"] = self.aggregation.value
        return d
