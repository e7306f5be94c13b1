"""Pure-numpy fallback for the split-search kernel."""

import numpy as np


def scan_split(values, labels):
    """Best Gini split of one sorted feature column.

    values must be ascending; labels are the 0/1 labels in the same
    order. Returns (threshold, cost) or (nan, inf) when every value is
    identical. The per-position arithmetic matches the Cython kernel
    operation-for-operation so both backends agree bit-for-bit.
    """
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n = values.shape[0]
    if n < 2:
        return float("nan"), float("inf")

    total_ones = int(labels.sum())
    cum_ones = np.cumsum(labels)

    # split position i puts the first i samples on the left; only
    # positions at a value boundary are valid thresholds
    i = np.arange(1, n, dtype=np.float64)
    valid = values[:-1] < values[1:]
    if not valid.any():
        return float("nan"), float("inf")

    lo = cum_ones[:-1].astype(np.float64)
    ln = i
    ro = total_ones - lo
    rn = n - i
    pl1 = lo / ln
    pl0 = (ln - lo) / ln
    pr1 = ro / rn
    pr0 = (rn - ro) / rn
    gl = 1.0 - pl1 * pl1 - pl0 * pl0
    gr = 1.0 - pr1 * pr1 - pr0 * pr0
    cost = (ln * gl + rn * gr) / n
    cost = np.where(valid, cost, np.inf)

    best = int(np.argmin(cost))
    threshold = (values[best] + values[best + 1]) / 2.0
    return float(threshold), float(cost[best])
