# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the kernels in `streamadapt._pykernels`.

Same signatures and semantics; summation order is a plain left-to-right
loop, so results match the NumPy backend to floating-point tolerance
rather than bit-for-bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log, pow, sqrt

cnp.import_array()

BACKEND = "cython"


def normalize_rows(x):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xa.shape[0]
    cdef Py_ssize_t d = xa.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, d), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] norms = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double s
    for i in range(n):
        s = 0.0
        for j in range(d):
            s += xa[i, j] * xa[i, j]
        s = sqrt(s)
        norms[i] = s
        if s > 0.0:
            for j in range(d):
                out[i, j] = xa[i, j] / s
        else:
            for j in range(d):
                out[i, j] = 0.0
    return out, norms


def softmax_rows(logits, double scale):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] la = np.ascontiguousarray(logits, dtype=np.float64)
    cdef Py_ssize_t n = la.shape[0]
    cdef Py_ssize_t m = la.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, m), dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double hi, s, z
    for i in range(n):
        hi = la[i, 0] * scale
        for j in range(1, m):
            z = la[i, j] * scale
            if z > hi:
                hi = z
        s = 0.0
        for j in range(m):
            z = exp(la[i, j] * scale - hi)
            out[i, j] = z
            s += z
        for j in range(m):
            out[i, j] /= s
    return out


def renyi_weights(probs, double alpha):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pa = np.ascontiguousarray(probs, dtype=np.float64)
    cdef Py_ssize_t n = pa.shape[0]
    cdef Py_ssize_t m = pa.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double s
    for i in range(n):
        s = 0.0
        for j in range(m):
            s += pow(pa[i, j], alpha)
        out[i] = pow(s, 1.0 / (alpha - 1.0))
    return out


def shannon_entropy_rows(probs):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pa = np.ascontiguousarray(probs, dtype=np.float64)
    cdef Py_ssize_t n = pa.shape[0]
    cdef Py_ssize_t m = pa.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double s, p
    for i in range(n):
        s = 0.0
        for j in range(m):
            p = pa[i, j]
            if p > 0.0:
                s += p * log(p)
        out[i] = -s
    return out


def weighted_mean_rows(probs, weights):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pa = np.ascontiguousarray(probs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wa = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = pa.shape[0]
    cdef Py_ssize_t m = pa.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(m, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double wsum = 0.0
    cdef double wn
    for i in range(n):
        wsum += wa[i]
    if wsum <= 0.0:
        return out, wsum
    for i in range(n):
        wn = wa[i] / wsum
        for j in range(m):
            out[j] += wn * pa[i, j]
    return out, wsum


def centroid_update(double[:, ::1] centroids, double[::1] counts, Py_ssize_t class_idx, v):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] va = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t d = centroids.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t j
    cdef double k = counts[class_idx]
    cdef double norm = 0.0
    for j in range(d):
        s[j] = k * centroids[class_idx, j] + va[j]
        norm += s[j] * s[j]
    norm = sqrt(norm)
    if norm < 1e-12:
        return norm
    for j in range(d):
        centroids[class_idx, j] = s[j] / norm
    counts[class_idx] = k + 1.0
    return norm
