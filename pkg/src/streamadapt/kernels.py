"""Kernel backend selection.

The compiled extension is preferred when it was built; setting the
environment variable ``STREAMADAPT_PURE_PYTHON=1`` before import forces the
NumPy fallback (useful for debugging and for benchmarking the two against
each other, see benchmarks/bench_kernels.py).
"""

import os

from . import _pykernels

if os.environ.get("STREAMADAPT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND

normalize_rows = _impl.normalize_rows
softmax_rows = _impl.softmax_rows
renyi_weights = _impl.renyi_weights
shannon_entropy_rows = _impl.shannon_entropy_rows
weighted_mean_rows = _impl.weighted_mean_rows
centroid_update = _impl.centroid_update
