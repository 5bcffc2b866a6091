"""Reliability weighting and merging of probability vectors.

Two levels of merging happen per example: the B per-view predictions of a
branch collapse into one vector (weighted by a confidence score per view),
and the two branch vectors collapse into the fused output (weighted by a
fixed balance factor beta).

The confidence score of a prediction p is (sum_j p_j^alpha)^(1/(alpha-1))
with 0 < alpha < 1: the exponential of its negative order-alpha entropy.
It lives in (0, 1], equals 1 exactly on one-hot vectors, and 1/J on the
uniform vector, so confident predictions dominate the average.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import kernels
from .core import Aggregation
from .errors import AllZeroWeightsError, InvalidAlphaError


@dataclasses.dataclass(frozen=True)
class WeightingScheme:
    """How per-view predictions are weighted before averaging."""

    kind: Aggregation = Aggregation.RENYI
    alpha: float = 0.5  # RENYI only
    keep_fraction: float = 0.1  # ENTROPY_THRESHOLD only

    def __post_init__(self):
        object.__setattr__(self, "kind", Aggregation(self.kind))
        if self.kind is Aggregation.RENYI and not 0.0 < self.alpha < 1.0:
            raise InvalidAlphaError(f"alpha must be in (0, 1), got {self.alpha}")
        if not 0.0 < self.keep_fraction <= 1.0:
            raise ValueError(f"keep_fraction must be in (0, 1], got {self.keep_fraction}")


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise InvalidAlphaError(f"alpha must be in (0, 1), got {alpha}")


def renyi_weight(p, alpha):
    """Confidence weight of one probability vector, in (0, 1]."""
    _check_alpha(alpha)
    p = np.asarray(p, dtype=np.float64).reshape(1, -1)
    return float(kernels.renyi_weights(p, alpha)[0])


def shannon_entropy(p):
    """Natural-log entropy of one probability vector, in [0, ln J]."""
    p = np.asarray(p, dtype=np.float64).reshape(1, -1)
    return float(kernels.shannon_entropy_rows(p)[0])


def view_weights(preds, scheme: WeightingScheme):
    """Per-view reliability weights for a (B, J) block of predictions.

    Always returns non-negative weights with at least one strictly
    positive entry: schemes that can vanish everywhere (normalized entropy
    on an all-uniform batch) fall back to uniform weights.
    """
    preds = np.asarray(preds, dtype=np.float64)
    if preds.ndim != 2 or preds.shape[0] < 1:
        raise ValueError(f"expected a (B, J) prediction block, got shape {preds.shape}")
    b = preds.shape[0]

    if scheme.kind is Aggregation.UNIFORM:
        return np.ones(b)
    if scheme.kind is Aggregation.MAX_PROB:
        return preds.max(axis=1)
    if scheme.kind is Aggregation.RENYI:
        _check_alpha(scheme.alpha)
        return kernels.renyi_weights(preds, scheme.alpha)

    entropies = kernels.shannon_entropy_rows(preds)
    if scheme.kind is Aggregation.ENTROPY_THRESHOLD:
        keep = max(1, math.ceil(scheme.keep_fraction * b))
        order = np.argsort(entropies, kind="stable")
        w = np.zeros(b)
        w[order[:keep]] = 1.0
        return w
    if scheme.kind is Aggregation.NORM_ENTROPY:
        h_max = math.log(preds.shape[1])
        w = np.maximum((h_max - entropies) / h_max, 0.0)
        if not np.any(w > 0.0):
            w = np.ones(b)
        return w
    raise ValueError(f"unknown weighting scheme {scheme.kind!r}")


def aggregate_views(preds, weights):
    """Convex combination of per-view predictions: sum_b w_b p^b / sum_b w_b."""
    preds = np.asarray(preds, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    if preds.ndim != 2 or weights.shape != (preds.shape[0],):
        raise ValueError(
            f"shapes disagree: preds {preds.shape}, weights {weights.shape}"
        )
    out, wsum = kernels.weighted_mean_rows(preds, weights)
    if wsum <= 0.0:
        raise AllZeroWeightsError("view weights sum to zero")
    return out


def fuse_branches(p_text, w_text, p_cluster, w_cluster, beta):
    """Balance the text and clustering branch predictions.

    Each branch vector is already a confidence-weighted view average, so
    the normalization of the two weighted sums reduces to a fixed
    beta/(1+beta) vs 1/(1+beta) split. A suppressed clustering branch
    (w_cluster == 0) passes the text prediction through unchanged.
    """
    if w_text <= 0.0:
        raise AllZeroWeightsError("text branch weight must be positive")
    if beta <= 0.0:
        raise ValueError(f"beta must be > 0, got {beta}")
    p_text = np.asarray(p_text, dtype=np.float64)
    if w_cluster <= 0.0:
        return p_text.copy()
    p_cluster = np.asarray(p_cluster, dtype=np.float64)
    cluster_share = 1.0 / (1.0 + beta)
    return (beta * cluster_share) * p_text + cluster_share * p_cluster
