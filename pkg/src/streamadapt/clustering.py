"""Online per-class centroids in the projected space.

Centroids start at the projected text embeddings with counters at zero,
so the first example assigned to a class fully replaces the text-derived
prior (set prior_count > 0 to retain it). Each update folds one vector
into its class centroid as a renormalized running mean:

    w_j <- (k_j * w_j + v) / ||k_j * w_j + v||,   k_j <- k_j + 1

Counters are stored as float64 but stay integral; renormalizing on every
step bounds floating-point drift independent of stream length.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .core import ClassModel
from .errors import DegenerateProjectionError, DimensionMismatchError, ZeroVectorError
from .projection import Projector


class CentroidBank:
    """Mutable clustering state: unit centroids plus assignment counters.

    Single-writer: only the engine's sequential loop mutates a bank.
    """

    def __init__(self, centroids, counts=None):
        self.centroids = np.ascontiguousarray(centroids, dtype=np.float64)
        if self.centroids.ndim != 2:
            raise DimensionMismatchError("centroids must be a (J, D) matrix")
        j = self.centroids.shape[0]
        if counts is None:
            self.counts = np.zeros(j)
        else:
            self.counts = np.ascontiguousarray(counts, dtype=np.float64)
            if self.counts.shape != (j,):
                raise DimensionMismatchError("counts length does not match centroid count")
        self.total_updates = 0
        self.skipped_updates = 0

    @property
    def class_count(self):
        return self.centroids.shape[0]

    @property
    def dimension(self):
        return self.centroids.shape[1]

    def update(self, class_idx, v):
        """Fold v into centroid class_idx; returns False when skipped.

        The update is skipped (and tallied) only on exact antipodal
        cancellation, where the running sum has no direction left.
        """
        if not 0 <= class_idx < self.class_count:
            raise IndexError(f"class index {class_idx} out of range")
        v = np.asarray(v, dtype=np.float64).reshape(-1)
        if v.shape[0] != self.dimension:
            raise DimensionMismatchError(
                f"vector dimension {v.shape[0]} != centroid dimension {self.dimension}"
            )
        norm = kernels.centroid_update(self.centroids, self.counts, class_idx, v)
        if norm < 1e-12:
            self.skipped_updates += 1
            return False
        self.total_updates += 1
        return True

    def similarities(self, v):
        """Cosine of v against every centroid."""
        v = np.asarray(v, dtype=np.float64).reshape(-1)
        norm = float(np.linalg.norm(v))
        if norm < 1e-12:
            raise ZeroVectorError("cannot compare a zero vector against centroids")
        sims = self.centroids @ v
        sims /= norm * np.linalg.norm(self.centroids, axis=1)
        return np.clip(sims, -1.0, 1.0)

    def copy(self):
        dup = CentroidBank(self.centroids.copy(), self.counts.copy())
        dup.total_updates = self.total_updates
        dup.skipped_updates = self.skipped_updates
        return dup

    def diagnostics(self):
        """Counts and centroid norms in report-friendly form."""
        return {
            "per_class_counts": [int(c) for c in self.counts],
            "centroid_norms": [float(n) for n in np.linalg.norm(self.centroids, axis=1)],
            "total_updates": self.total_updates,
            "skipped_updates": self.skipped_updates,
        }


def init_centroids(projector: Projector, class_model: ClassModel, prior_count=0.0) -> CentroidBank:
    """Centroids = projected unit text embeddings, counters at prior_count."""
    unit = class_model.unit_text_embeddings.astype(np.float64)
    centroids = np.empty_like(unit)
    for j in range(class_model.class_count):
        try:
            centroids[j] = projector.project(unit[j])
        except DegenerateProjectionError as exc:
            raise DegenerateProjectionError(
                f"text embedding of class {j} projects to zero", class_index=j
            ) from exc
    counts = np.full(class_model.class_count, float(prior_count))
    return CentroidBank(centroids, counts)
