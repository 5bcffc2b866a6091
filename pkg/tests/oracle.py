"""Independent scalar reference implementations used to freeze expected values.

Everything here re-derives the algorithm from its defining formulas with
explicit per-view / per-class loops. Only arithmetic primitives are
delegated (np.dot on 1-d vectors, np.linalg.svd); nothing imports the
package under test. Deliberately slow and obvious.
"""

from __future__ import annotations

import math

import numpy as np

RANK_TOL = 1e-6
DEGENERATE_TOL = 1e-8


def o_normalize(v):
    v = np.asarray(v, dtype=np.float64)
    n = math.sqrt(float(np.dot(v, v)))
    return v / n


def o_softmax(logits, scale):
    z = [scale * float(x) for x in logits]
    m = max(z)
    exps = [math.exp(x - m) for x in z]
    s = sum(exps)
    return np.array([e / s for e in exps])


def o_renyi_weight(p, alpha):
    total = sum(float(x) ** alpha for x in p)
    return total ** (1.0 / (alpha - 1.0))


def o_shannon_entropy(p):
    h = 0.0
    for x in p:
        x = float(x)
        if x > 0.0:
            h -= x * math.log(x)
    return h


def o_view_weights(preds, scheme, alpha=0.5, keep_fraction=0.1):
    b = len(preds)
    if scheme == "uniform":
        return [1.0] * b
    if scheme == "renyi":
        return [o_renyi_weight(p, alpha) for p in preds]
    if scheme == "max_prob":
        return [float(max(p)) for p in preds]
    if scheme == "entropy_threshold":
        ents = [o_shannon_entropy(p) for p in preds]
        keep = max(1, math.ceil(keep_fraction * b))
        order = sorted(range(b), key=lambda i: (ents[i], i))[:keep]
        w = [0.0] * b
        for i in order:
            w[i] = 1.0
        return w
    if scheme == "norm_entropy":
        j = len(preds[0])
        w = [max(0.0, (math.log(j) - o_shannon_entropy(p)) / math.log(j)) for p in preds]
        if all(x == 0.0 for x in w):
            w = [1.0] * b
        return w
    raise ValueError(scheme)


def o_aggregate(preds, weights):
    j = len(preds[0])
    total = sum(weights)
    out = np.zeros(j)
    for p, w in zip(preds, weights):
        for c in range(j):
            out[c] += (w / total) * float(p[c])
    return out


def o_fuse(p_text, p_cluster, beta):
    a = beta / (1.0 + beta)
    b = 1.0 / (1.0 + beta)
    return np.array([a * float(t) + b * float(c) for t, c in zip(p_text, p_cluster)])


def o_argmax(p):
    best, best_v = 0, float(p[0])
    for i in range(1, len(p)):
        if float(p[i]) > best_v:
            best, best_v = i, float(p[i])
    return best


def o_unit_text(raw_text):
    """Storage contract: normalize in f64, store f32, compute in f64."""
    unit = []
    for row in np.asarray(raw_text, dtype=np.float64):
        unit.append(o_normalize(row))
    return np.array(unit, dtype=np.float32).astype(np.float64)


def o_build_basis(raw_text, max_rank):
    """Kept basis rows: singular vectors 2..min(rank, max_rank) of the
    matrix whose columns are the unit text embeddings."""
    unit = o_unit_text(raw_text)
    u, s, _ = np.linalg.svd(unit.T, full_matrices=False)
    rank = sum(1 for x in s if float(x) >= RANK_TOL * float(s[0]))
    stop = min(rank, max_rank)
    return [np.asarray(u[:, i], dtype=np.float64) for i in range(1, stop)]


def o_project(kept, v):
    """Project onto the kept span and renormalize; None when degenerate."""
    v = np.asarray(v, dtype=np.float64)
    w = np.zeros_like(v)
    for b in kept:
        w += float(np.dot(b, v)) * b
    n = math.sqrt(float(np.dot(w, w)))
    if n < DEGENERATE_TOL:
        return None
    return w / n


def o_centroid_update(w, count, v):
    """Running renormalized mean: w <- normalize(count * w + v), count + 1."""
    merged = count * np.asarray(w, dtype=np.float64) + np.asarray(v, dtype=np.float64)
    n = math.sqrt(float(np.dot(merged, merged)))
    if n < 1e-12:
        return np.asarray(w, dtype=np.float64).copy(), count, False
    return merged / n, count + 1.0, True


def o_run(raw_text, records, alpha=0.5, beta=2.0, temperature=100.0,
          warmup_multiplier=10.0, max_rank=150, n_views=64,
          mode="full", aggregation="renyi", prior_count=0.0):
    """Replay the full streaming algorithm; returns (predictions, report dict).

    records: sequence of (views array, label or None); processed in order.
    """
    unit_text = o_unit_text(raw_text)
    j = unit_text.shape[0]
    kept = o_build_basis(raw_text, max_rank)

    centroids = []
    counts = []
    for t in unit_text:
        c = o_project(kept, t)
        if c is None:
            raise ValueError("class text embedding does not project")
        centroids.append(c)
        counts.append(float(prior_count))

    warmup_limit = math.ceil(warmup_multiplier * j)
    scheme = "uniform" if mode == "avg" else aggregation

    predictions = []
    n_labeled = n_correct = 0
    n_post_labeled = n_post_correct = 0
    for i, (views, label) in enumerate(records):
        views = np.asarray(views, dtype=np.float64)[:n_views]
        units = [o_normalize(v) for v in views]

        p_text_views = []
        for u in units:
            logits = [float(np.dot(u, unit_text[c])) for c in range(j)]
            p_text_views.append(o_softmax(logits, temperature))

        projected = [o_project(kept, u) for u in units]
        defined = [p for p in projected if p is not None]

        p_cluster_views = []
        for v_hat in defined:
            logits = [float(np.dot(v_hat, centroids[c])) for c in range(j)]
            p_cluster_views.append(o_softmax(logits, temperature))

        p_text = o_aggregate(p_text_views, o_view_weights(p_text_views, scheme, alpha))
        warmup = i < warmup_limit
        if mode == "te" or not defined or warmup:
            fused = p_text
        else:
            p_cluster = o_aggregate(
                p_cluster_views, o_view_weights(p_cluster_views, scheme, alpha)
            )
            fused = p_cluster if mode == "oc" else o_fuse(p_text, p_cluster, beta)

        y = o_argmax(fused)
        predictions.append(y)

        if defined:
            v_hat_mean = np.zeros(views.shape[1])
            for p in defined:
                v_hat_mean += p
            v_hat_mean /= len(defined)
            centroids[y], counts[y], _ = o_centroid_update(
                centroids[y], counts[y], v_hat_mean
            )

        if label is not None:
            n_labeled += 1
            n_correct += y == label
            if not warmup:
                n_post_labeled += 1
                n_post_correct += y == label

    report = {
        "n_labeled": n_labeled,
        "n_correct": n_correct,
        "accuracy": (n_correct / n_labeled) if n_labeled else None,
        "postwarmup_accuracy": (
            (n_post_correct / n_post_labeled) if n_post_labeled else None
        ),
        "centroids": [c.copy() for c in centroids],
        "counts": list(counts),
    }
    return predictions, report


def o_knn(embeddings, labels, k):
    """Leave-one-out cosine kNN, majority vote, lowest class index on ties."""
    x = [o_normalize(v) for v in np.asarray(embeddings, dtype=np.float64)]
    n = len(x)
    labels = [int(l) for l in labels]
    n_classes = max(labels) + 1
    correct = 0
    for i in range(n):
        sims = []
        for m in range(n):
            if m != i:
                sims.append((-float(np.dot(x[i], x[m])), m))
        sims.sort()
        votes = [0] * n_classes
        for _, m in sims[:k]:
            votes[labels[m]] += 1
        best = 0
        for c in range(1, n_classes):
            if votes[c] > votes[best]:
                best = c
        correct += best == labels[i]
    return correct / n
