# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython split-search kernel. Contract documented in kernels/__init__.py."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def scan_split(double[::1] values, long long[::1] labels):
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return float("nan"), float("inf")

    cdef long long total_ones = 0
    cdef Py_ssize_t j
    for j in range(n):
        total_ones += labels[j]

    cdef double best_cost = np.inf
    cdef Py_ssize_t best_pos = -1
    cdef long long left_ones = 0
    cdef double ln, lo, rn, ro, gl, gr, cost
    cdef double pl1, pl0, pr1, pr0
    cdef Py_ssize_t i
    for i in range(1, n):
        left_ones += labels[i - 1]
        if not values[i - 1] < values[i]:
            continue
        ln = i
        lo = left_ones
        rn = n - i
        ro = total_ones - left_ones
        pl1 = lo / ln
        pl0 = (ln - lo) / ln
        pr1 = ro / rn
        pr0 = (rn - ro) / rn
        gl = 1.0 - pl1 * pl1 - pl0 * pl0
        gr = 1.0 - pr1 * pr1 - pr0 * pr0
        cost = (ln * gl + rn * gr) / n
        if cost < best_cost:
            best_cost = cost
            best_pos = i

    if best_pos < 0:
        return float("nan"), float("inf")
    return (values[best_pos - 1] + values[best_pos]) / 2.0, best_cost
