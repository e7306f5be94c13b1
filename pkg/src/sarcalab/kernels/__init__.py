"""Split-search kernel for decision trees.

The compiled Cython kernel is preferred; a vectorized numpy fallback is
selected when the extension is missing or SARCALAB_PURE_PYTHON is set.
Both backends implement the same contract:

    scan_split(values_sorted, labels_sorted) -> (threshold, cost)

where `values_sorted` is one feature column in ascending order,
`labels_sorted` the binary labels in the same order, `threshold` the
midpoint of the best `x <= t` split, and `cost` the weighted Gini
impurity of that split. (nan, inf) means no valid split exists.
Ties are broken toward the earliest (lowest) threshold.
"""

import os

if os.environ.get("SARCALAB_PURE_PYTHON"):
    from ._split_py import scan_split

    BACKEND = "python"
else:
    try:
        from ._split_c import scan_split

        BACKEND = "c"
    except ImportError:
        from ._split_py import scan_split

        BACKEND = "python"

__all__ = ["scan_split", "BACKEND"]
