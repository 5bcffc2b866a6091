"""Micro-benchmark: compiled kernels against the NumPy fallback.

Times each hot kernel on engine-realistic shapes (B views x J classes)
and prints the per-call ratio. With --stream it also times a full
synthetic stream in each backend via subprocess, because the backend is
frozen at import time.

The compiled loops win at the small per-example shapes the engine
actually sees; at large shapes NumPy's BLAS catches up, so pass bigger
--views/--classes/--dim to see the crossover.

    python3 benchmarks/bench_kernels.py --stream
    python3 benchmarks/bench_kernels.py --views 256 --classes 1000
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from streamadapt import _pykernels

try:
    from streamadapt import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats, inner):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bench_backend(mod, views, classes, dim, rng, repeats, inner):
    logits = rng.standard_normal((views, classes))
    probs = mod.softmax_rows(logits, 100.0)
    rows = rng.standard_normal((views, dim))
    weights = rng.random(views) + 0.05
    centroids = rng.standard_normal((classes, dim))
    centroids /= np.linalg.norm(centroids, axis=1, keepdims=True)
    counts = rng.integers(0, 50, classes).astype(np.float64)
    v = rng.standard_normal(dim)

    return {
        "normalize_rows": best_of(lambda: mod.normalize_rows(rows), repeats, inner),
        "softmax_rows": best_of(lambda: mod.softmax_rows(logits, 100.0), repeats, inner),
        "renyi_weights": best_of(lambda: mod.renyi_weights(probs, 0.5), repeats, inner),
        "shannon_entropy_rows": best_of(
            lambda: mod.shannon_entropy_rows(probs), repeats, inner),
        "weighted_mean_rows": best_of(
            lambda: mod.weighted_mean_rows(probs, weights), repeats, inner),
        "centroid_update": best_of(
            lambda: mod.centroid_update(centroids, counts, 3, v), repeats, inner),
    }


def bench_stream(pure):
    code = (
        "import time; from streamadapt import Engine, Config; "
        "from streamadapt.synth import SynthSpec, synth_generate; "
        "m, r, _ = synth_generate(SynthSpec(n_classes=20, dimension=64, "
        "n_examples=2000, n_views=8, view_noise=0.8)); "
        "e = Engine(m, Config(n_views=8)); t0 = time.perf_counter(); "
        "e.run_stream(r); print(time.perf_counter() - t0)"
    )
    env = dict(os.environ, STREAMADAPT_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--views", type=int, default=8)
    ap.add_argument("--classes", type=int, default=20)
    ap.add_argument("--dim", type=int, default=64)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--inner", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--stream", action="store_true",
                    help="also time a 2000-record synthetic stream per backend")
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    rng = np.random.default_rng(args.seed)
    py = bench_backend(_pykernels, args.views, args.classes, args.dim,
                       rng, args.repeats, args.inner)
    rng = np.random.default_rng(args.seed)
    cy = bench_backend(_ckernels, args.views, args.classes, args.dim,
                       rng, args.repeats, args.inner)

    print(f"shapes: views={args.views} classes={args.classes} dim={args.dim}")
    print(f"{'kernel':<22} {'numpy (us)':>12} {'compiled (us)':>14} {'ratio':>7}")
    for name in py:
        ratio = py[name] / cy[name]
        print(f"{name:<22} {py[name] * 1e6:>12.2f} {cy[name] * 1e6:>14.2f} "
              f"{ratio:>6.2f}x")

    if args.stream:
        t_py = bench_stream(pure=True)
        t_cy = bench_stream(pure=False)
        print(f"\n2000-record stream: numpy {t_py:.3f}s, compiled {t_cy:.3f}s, "
              f"{t_py / t_cy:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
