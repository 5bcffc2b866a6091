"""Backpropagation-free test-time adaptation over precomputed embeddings.

Given unit-normalized class text embeddings and a stream of visual
embedding records, the engine fuses two prediction branches: direct
softmax-cosine against the text embeddings, and softmax-cosine against
online class centroids maintained in a subspace where the shared
principal direction of the text embeddings has been removed. Per-view
predictions are combined by confidence weights, and the first examples
of the stream serve as a warm-up during which only the text branch
speaks while the centroids accumulate.

Everything is NumPy arrays in, NumPy arrays out. Hot loops run in a
compiled extension when available, with a pure-Python fallback selected
at import (force it with STREAMADAPT_PURE_PYTHON=1).
"""

from . import kernels
from .aggregation import (
    WeightingScheme,
    aggregate_views,
    fuse_branches,
    renyi_weight,
    shannon_entropy,
    view_weights,
)
from .baft import inspect_dataset, read_dataset, write_dataset
from .clustering import CentroidBank, init_centroids
from .core import (
    Aggregation,
    ClassModel,
    Config,
    Mode,
    StreamRecord,
    cosine,
    normalize,
)
from .engine import (
    Engine,
    PredictionRecord,
    RunReport,
    cluster_prediction,
    text_prediction,
)
from .errors import (
    AllViewsDegenerateError,
    AllZeroWeightsError,
    BadMagicError,
    DatasetError,
    DegenerateProjectionError,
    DimensionMismatchError,
    InfeasibleSeparationError,
    InvalidAlphaError,
    IoFailureError,
    NonFiniteError,
    RankDeficientError,
    StreamAdaptError,
    StreamError,
    TooFewExamplesError,
    TruncatedError,
    VersionUnsupportedError,
    ZeroVectorError,
)
from .evaluation import knn_eval, sweep, sweep_to_csv, sweep_to_json
from .projection import Projector, build_projection
from .synth import SynthSpec, synth_generate

__version__ = "0.1.0"

__all__ = [
    "Aggregation",
    "AllViewsDegenerateError",
    "AllZeroWeightsError",
    "BadMagicError",
    "CentroidBank",
    "ClassModel",
    "Config",
    "DatasetError",
    "DegenerateProjectionError",
    "DimensionMismatchError",
    "Engine",
    "InfeasibleSeparationError",
    "InvalidAlphaError",
    "IoFailureError",
    "Mode",
    "NonFiniteError",
    "PredictionRecord",
    "Projector",
    "RankDeficientError",
    "RunReport",
    "StreamAdaptError",
    "StreamError",
    "StreamRecord",
    "SynthSpec",
    "TooFewExamplesError",
    "TruncatedError",
    "VersionUnsupportedError",
    "WeightingScheme",
    "ZeroVectorError",
    "aggregate_views",
    "build_projection",
    "cluster_prediction",
    "cosine",
    "fuse_branches",
    "init_centroids",
    "inspect_dataset",
    "kernels",
    "knn_eval",
    "normalize",
    "read_dataset",
    "renyi_weight",
    "shannon_entropy",
    "sweep",
    "sweep_to_csv",
    "sweep_to_json",
    "synth_generate",
    "text_prediction",
    "view_weights",
    "write_dataset",
]
