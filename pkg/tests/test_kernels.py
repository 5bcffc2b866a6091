"""Kernel backends: unit semantics and python/cython equivalence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from streamadapt import _pykernels

try:
    from streamadapt import _ckernels
except ImportError:  # built without the extension
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels else [])
IDS = [b.BACKEND for b in BACKENDS]


@pytest.fixture(params=BACKENDS, ids=IDS)
def k(request):
    return request.param


def random_probs(rng, b, j):
    p = rng.random((b, j)) + 1e-12
    return p / p.sum(axis=1, keepdims=True)


def test_normalize_rows_units_and_zero_row(k):
    x = np.array([[3.0, 4.0], [0.0, 0.0], [1.0, 0.0]])
    out, norms = k.normalize_rows(x)
    np.testing.assert_allclose(out[0], [0.6, 0.8], atol=1e-12)
    np.testing.assert_array_equal(out[1], [0.0, 0.0])
    np.testing.assert_allclose(norms, [5.0, 0.0, 1.0], atol=1e-12)


def test_softmax_rows_matches_closed_form(k):
    out = k.softmax_rows(np.array([[1.0, 0.0]]), 1.0)
    e = np.e
    np.testing.assert_allclose(out[0], [e / (e + 1), 1 / (e + 1)], atol=1e-12)


def test_softmax_rows_stable_at_huge_logits(k):
    out = k.softmax_rows(np.array([[1e4, 0.0, -1e4]]), 1.0)
    assert np.all(np.isfinite(out))
    np.testing.assert_allclose(out.sum(axis=1), 1.0, atol=1e-12)
    assert out[0, 0] == pytest.approx(1.0)


def test_softmax_rows_constant_row_is_uniform(k):
    out = k.softmax_rows(np.full((1, 5), 0.37), 100.0)
    np.testing.assert_allclose(out[0], 0.2, atol=1e-12)


def test_renyi_weights_identities(k):
    onehot = np.zeros((1, 7))
    onehot[0, 3] = 1.0
    assert k.renyi_weights(onehot, 0.5)[0] == pytest.approx(1.0, abs=1e-12)
    uniform = np.full((1, 4), 0.25)
    assert k.renyi_weights(uniform, 0.5)[0] == pytest.approx(0.25, abs=1e-12)


def test_shannon_entropy_rows_zero_times_log_zero(k):
    p = np.array([[1.0, 0.0], [0.75, 0.25]])
    h = k.shannon_entropy_rows(p)
    assert h[0] == pytest.approx(0.0, abs=1e-15)
    assert h[1] == pytest.approx(0.5623351446188083, abs=1e-12)


def test_weighted_mean_rows_single_row_exact(k):
    p = np.array([[0.2, 0.3, 0.5]])
    out, wsum = k.weighted_mean_rows(p, np.array([0.7]))
    np.testing.assert_array_equal(out, p[0])
    assert wsum == pytest.approx(0.7)


def test_weighted_mean_rows_zero_weights(k):
    out, wsum = k.weighted_mean_rows(np.ones((2, 3)) / 3, np.zeros(2))
    assert wsum == 0.0
    np.testing.assert_array_equal(out, np.zeros(3))


def test_centroid_update_semantics(k):
    centroids = np.array([[1.0, 0.0], [0.0, 1.0]])
    counts = np.array([1.0, 0.0])
    norm = k.centroid_update(centroids, counts, 0, np.array([0.0, 1.0]))
    assert norm == pytest.approx(np.sqrt(2.0))
    np.testing.assert_allclose(centroids[0], [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-12)
    np.testing.assert_array_equal(centroids[1], [0.0, 1.0])
    np.testing.assert_array_equal(counts, [2.0, 0.0])


def test_centroid_update_antipodal_skip(k):
    centroids = np.array([[1.0, 0.0]])
    counts = np.array([1.0])
    norm = k.centroid_update(centroids, counts, 0, np.array([-1.0, 0.0]))
    assert norm < 1e-12
    np.testing.assert_array_equal(centroids[0], [1.0, 0.0])
    np.testing.assert_array_equal(counts, [1.0])


@pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
def test_backends_agree_on_random_inputs():
    rng = np.random.default_rng(7)
    for _ in range(20):
        b, j = int(rng.integers(1, 65)), int(rng.integers(2, 40))
        x = rng.standard_normal((b, j))
        py_u, py_n = _pykernels.normalize_rows(x)
        cy_u, cy_n = _ckernels.normalize_rows(x)
        np.testing.assert_allclose(cy_u, py_u, atol=1e-12)
        np.testing.assert_allclose(cy_n, py_n, atol=1e-12)

        np.testing.assert_allclose(
            _ckernels.softmax_rows(x, 100.0), _pykernels.softmax_rows(x, 100.0),
            atol=1e-12,
        )
        p = random_probs(rng, b, j)
        np.testing.assert_allclose(
            _ckernels.renyi_weights(p, 0.5), _pykernels.renyi_weights(p, 0.5),
            atol=1e-12,
        )
        np.testing.assert_allclose(
            _ckernels.shannon_entropy_rows(p), _pykernels.shannon_entropy_rows(p),
            atol=1e-12,
        )
        w = rng.random(b)
        py_m, py_s = _pykernels.weighted_mean_rows(p, w)
        cy_m, cy_s = _ckernels.weighted_mean_rows(p, w)
        np.testing.assert_allclose(cy_m, py_m, atol=1e-12)
        assert cy_s == pytest.approx(py_s, abs=1e-12)


@pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
def test_backends_agree_on_centroid_update_stream():
    rng = np.random.default_rng(11)
    base = rng.standard_normal((5, 12))
    base /= np.linalg.norm(base, axis=1, keepdims=True)
    py_c, py_k = base.copy(), np.zeros(5)
    cy_c, cy_k = base.copy(), np.zeros(5)
    for _ in range(300):
        j = int(rng.integers(0, 5))
        v = rng.standard_normal(12)
        _pykernels.centroid_update(py_c, py_k, j, v)
        _ckernels.centroid_update(cy_c, cy_k, j, v)
    np.testing.assert_allclose(cy_c, py_c, atol=1e-9)
    np.testing.assert_array_equal(cy_k, py_k)


@settings(max_examples=60, deadline=None)
@given(
    arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(2, 12)),
           elements=st.floats(-50, 50)),
)
def test_softmax_rows_always_a_distribution(x):
    for k in BACKENDS:
        out = k.softmax_rows(x, 100.0)
        assert np.all(out >= 0)
        np.testing.assert_allclose(out.sum(axis=1), 1.0, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(
    arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(2, 12)),
           elements=st.floats(1e-9, 1.0)),
    st.floats(0.05, 0.95),
)
def test_renyi_weights_always_in_unit_interval(raw, alpha):
    p = raw / raw.sum(axis=1, keepdims=True)
    for k in BACKENDS:
        w = k.renyi_weights(p, alpha)
        assert np.all(w > 0)
        assert np.all(w <= 1.0 + 1e-12)
