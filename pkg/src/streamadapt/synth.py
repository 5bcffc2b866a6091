"""Synthetic embedding streams with controllable difficulty.

Class means are well-separated unit directions. Each example samples a
base vector concentrated around its class mean and derives B views by
adding small Gaussian noise and renormalizing. The text embeddings are
the true means rotated by a fixed angle inside a random 2-plane per
class, which models a classifier that points near, but not at, the real
cluster centers: exactly the situation where online clustering helps.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .core import ClassModel, StreamRecord
from .errors import InfeasibleSeparationError

# pairwise cosine between accepted class means must stay below this
SEPARATION_COS = 0.5
_MAX_ATTEMPTS_PER_CLASS = 10_000


@dataclasses.dataclass(frozen=True)
class SynthSpec:
    n_classes: int = 20
    dimension: int = 64
    kappa: float = 30.0  # concentration of examples around their class mean
    text_rotation_deg: float = 35.0  # text-vs-cluster mismatch angle
    n_examples: int = 2000
    n_views: int = 8
    view_noise: float = 0.15
    label_skew: float = 0.0  # Zipf exponent over class frequencies, 0 = uniform
    seed: int = 0

    def __post_init__(self):
        if self.n_classes < 2:
            raise ValueError("need at least 2 classes")
        if self.dimension < 2:
            raise ValueError("need dimension >= 2")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if not 0.0 <= self.text_rotation_deg < 90.0:
            raise ValueError("text_rotation_deg must lie in [0, 90)")
        if self.n_examples < 0 or self.n_views < 1:
            raise ValueError("n_examples must be >= 0 and n_views >= 1")
        if self.view_noise < 0 or self.label_skew < 0:
            raise ValueError("view_noise and label_skew must be non-negative")

    def to_dict(self):
        return dataclasses.asdict(self)


def _separated_means(rng, n_classes, dimension):
    """Rejection-sample unit directions with pairwise cosine below the cap."""
    means = np.empty((n_classes, dimension), dtype=np.float64)
    count = 0
    for _ in range(_MAX_ATTEMPTS_PER_CLASS * n_classes):
        if count == n_classes:
            break
        cand = rng.standard_normal(dimension)
        cand /= np.linalg.norm(cand)
        if count == 0 or np.max(means[:count] @ cand) < SEPARATION_COS:
            means[count] = cand
            count += 1
    if count < n_classes:
        raise InfeasibleSeparationError(
            f"could not place {n_classes} means with pairwise cosine < "
            f"{SEPARATION_COS} in dimension {dimension}"
        )
    return means


def _rotate_in_random_plane(rng, mean, angle_deg):
    """Rotate a unit vector by angle_deg toward a random orthogonal direction."""
    if angle_deg == 0.0:
        return mean.copy()
    # Gram-Schmidt a random direction against the mean
    g = rng.standard_normal(mean.shape[0])
    g -= (g @ mean) * mean
    g /= np.linalg.norm(g)
    theta = math.radians(angle_deg)
    return math.cos(theta) * mean + math.sin(theta) * g


def _sample_around(rng, mean, sigma):
    """Tangent-Gaussian sample: mean + sigma * tangent noise, renormalized."""
    g = rng.standard_normal(mean.shape[0])
    g -= (g @ mean) * mean
    v = mean + sigma * g
    return v / np.linalg.norm(v)


def synth_generate(spec: SynthSpec):
    """Build (class_model, records, ground_truth_means) for a spec.

    Deterministic for a fixed spec: all randomness flows from one
    generator seeded with spec.seed, consumed in a fixed order.
    """
    rng = np.random.default_rng(spec.seed)
    means = _separated_means(rng, spec.n_classes, spec.dimension)

    text = np.empty_like(means)
    for j in range(spec.n_classes):
        text[j] = _rotate_in_random_plane(rng, means[j], spec.text_rotation_deg)
    class_model = ClassModel.from_text_embeddings(text.astype(np.float32))

    weights = (np.arange(spec.n_classes) + 1.0) ** (-spec.label_skew)
    weights /= weights.sum()
    labels = rng.choice(spec.n_classes, size=spec.n_examples, p=weights)

    sigma = 1.0 / math.sqrt(spec.kappa)
    records = []
    for i in range(spec.n_examples):
        base = _sample_around(rng, means[labels[i]], sigma)
        views = np.empty((spec.n_views, spec.dimension), dtype=np.float64)
        views[0] = base  # view 0 is the un-augmented example
        for b in range(1, spec.n_views):
            v = base + spec.view_noise * rng.standard_normal(spec.dimension)
            views[b] = v / np.linalg.norm(v)
        records.append(
            StreamRecord(
                example_id=i,
                views=views.astype(np.float32),
                label=int(labels[i]),
            )
        )
    return class_model, records, means
