"""NumPy implementations of the hot row-wise kernels.

This module is the fallback backend; `streamadapt._ckernels` provides the
compiled twin with identical signatures. Both operate on C-contiguous
float64 arrays and agree to floating-point tolerance (summation order may
differ). Backend selection happens in `streamadapt.kernels`.
"""

import numpy as np

BACKEND = "python"


def normalize_rows(x):
    """Return (unit_rows, norms). Rows with norm == 0 are left as zeros."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    norms = np.sqrt(np.einsum("ij,ij->i", x, x))
    safe = np.where(norms > 0.0, norms, 1.0)
    return x / safe[:, None], norms


def softmax_rows(logits, scale):
    """Row-wise softmax of scale * logits, numerically stable."""
    z = np.asarray(logits, dtype=np.float64) * scale
    z -= z.max(axis=1, keepdims=True)
    np.exp(z, out=z)
    z /= z.sum(axis=1, keepdims=True)
    return z


def renyi_weights(probs, alpha):
    """Per-row confidence weight (sum_j p_j^alpha)^(1/(alpha-1)), in (0, 1]."""
    p = np.asarray(probs, dtype=np.float64)
    s = np.power(p, alpha).sum(axis=1)
    return np.power(s, 1.0 / (alpha - 1.0))


def shannon_entropy_rows(probs):
    """Per-row natural-log entropy with 0*log(0) treated as 0."""
    p = np.asarray(probs, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log(p), 0.0)
    return -terms.sum(axis=1)


def weighted_mean_rows(probs, weights):
    """Return (convex combination of rows, weight sum).

    Weights are normalized by their sum before mixing, so the result is
    invariant to positive rescaling and exact for a single row.
    """
    p = np.asarray(probs, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    wsum = float(w.sum())
    if wsum <= 0.0:
        return np.zeros(p.shape[1]), wsum
    return (w / wsum) @ p, wsum


def centroid_update(centroids, counts, class_idx, v):
    """Fold v into centroid `class_idx` as a renormalized running mean.

    Returns the pre-normalization norm of counts[j]*w_j + v; when it is
    below 1e-12 nothing is mutated and the caller should skip the step.
    """
    j = class_idx
    s = counts[j] * centroids[j] + np.asarray(v, dtype=np.float64)
    norm = float(np.sqrt(np.dot(s, s)))
    if norm < 1e-12:
        return norm
    centroids[j] = s / norm
    counts[j] += 1.0
    return norm
