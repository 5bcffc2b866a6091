"""Subspace projection that aligns visual and text embeddings.

The text-embedding matrix is decomposed with an SVD; the span of the unit
text embeddings gives an orthonormal basis ordered by singular value. The
leading direction is where all classes overlap the most, so the projection
keeps the span *minus* that principal axis and renormalizes. Vectors
projected this way separate classes better and are immune to any common
offset along the discarded axis.
"""

from __future__ import annotations

import numpy as np

from .core import ClassModel
from .errors import DegenerateProjectionError, DimensionMismatchError, RankDeficientError

# Singular values below RANK_TOL * sigma_max count as numerically null
# (duplicate or near-duplicate class names produce them).
RANK_TOL = 1e-6
DEGENERATE_TOL = 1e-8


class Projector:
    """Immutable orthonormal basis with the principal axis dropped.

    basis: (r, D) float64, rows are the retained singular vectors in
        descending singular-value order.
    kept_range: 1-based inclusive (start, stop) of the rows used by
        project(); always (2, k) so row 0 is excluded by construction.
    """

    def __init__(self, basis, kept_stop):
        basis = np.ascontiguousarray(basis, dtype=np.float64)
        if basis.ndim != 2 or basis.shape[0] < 2:
            raise RankDeficientError("projector needs at least 2 basis vectors")
        if not 2 <= kept_stop <= basis.shape[0]:
            raise ValueError(f"kept_stop {kept_stop} out of range for rank {basis.shape[0]}")
        self._basis = basis
        self._kept = np.ascontiguousarray(basis[1:kept_stop])
        self._kept_stop = int(kept_stop)
        for arr in (self._basis, self._kept):
            arr.setflags(write=False)

    @property
    def basis(self):
        return self._basis

    @property
    def rank(self):
        return self._basis.shape[0]

    @property
    def dimension(self):
        return self._basis.shape[1]

    @property
    def kept_range(self):
        return (2, self._kept_stop)

    @property
    def kept_count(self):
        return self._kept.shape[0]

    def principal_axis(self):
        return self._basis[0].copy()

    def project(self, v):
        """Project v onto the kept subspace and renormalize (float64).

        Raises DegenerateProjectionError when v is numerically orthogonal
        to the kept subspace.
        """
        v = np.asarray(v, dtype=np.float64).reshape(-1)
        if v.shape[0] != self.dimension:
            raise DimensionMismatchError(
                f"vector has dimension {v.shape[0]}, projector expects {self.dimension}"
            )
        coords = self._kept @ v
        w = coords @ self._kept
        norm = float(np.linalg.norm(w))
        if norm < DEGENERATE_TOL:
            raise DegenerateProjectionError(
                f"projected norm {norm:.3e} below {DEGENERATE_TOL:.0e}"
            )
        return w / norm

    def project_rows(self, rows):
        """Batch variant of project() that never raises.

        Returns (projected rows, pre-normalization norms). Rows whose norm
        falls below the degeneracy tolerance are left as zeros; callers
        decide how to treat them (the engine drops those views).
        """
        rows = np.ascontiguousarray(rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[1] != self.dimension:
            raise DimensionMismatchError(
                f"rows of shape {rows.shape} do not match dimension {self.dimension}"
            )
        coords = rows @ self._kept.T
        w = coords @ self._kept
        norms = np.linalg.norm(w, axis=1)
        defined = norms >= DEGENERATE_TOL
        out = np.zeros_like(w)
        if np.any(defined):
            out[defined] = w[defined] / norms[defined, None]
        return out, norms


def build_projection(class_model: ClassModel, max_rank: int) -> Projector:
    """Build the alignment projector from a class model's text embeddings.

    The SVD is taken over the matrix whose columns are the *unit* text
    embeddings (everything downstream is cosine-based, so scale carries
    no information). Vectors with singular value below RANK_TOL * sigma_max
    are discarded; fewer than two survivors means the classes are
    numerically identical and no meaningful subspace exists.
    """
    if max_rank < 2:
        raise ValueError(f"max_rank must be >= 2, got {max_rank}")
    t = class_model.unit_text_embeddings.astype(np.float64).T  # (D, J)
    u, s, _ = np.linalg.svd(t, full_matrices=False)
    if s[0] <= 0.0:
        raise RankDeficientError("text-embedding matrix is all zeros")
    effective = int(np.sum(s >= RANK_TOL * s[0]))
    if effective < 2:
        raise RankDeficientError(
            f"only {effective} singular vector(s) survive the rank tolerance; "
            "class embeddings are (near-)identical"
        )
    kept_stop = min(effective, max_rank)
    return Projector(u[:, :effective].T, kept_stop)
