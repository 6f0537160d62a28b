"""Exact binary constituent decoding by label-factored chart search."""

from __future__ import annotations

import numpy as np

from ..charts import ScoreChart
from ..trees import ConstTree
from ._kernels import cky_fill
from .common import DecodeResult, DecodeStats, label_max_tables, score_const_tree


# Module level rather than a recursive closure: a closure would tie the DP
# tables into a reference cycle, leaving their disposal to the cyclic
# collector instead of plain refcounting.
def _backtrack(state, i: int, j: int, at_root: bool) -> ConstTree:
    bk, la_all, la_real, labels = state
    li = la_real[i, j] if at_root else la_all[i, j]
    label = labels[li]
    if j - i == 1:
        return ConstTree(label, i, j)
    k = int(bk[i, j])
    return ConstTree(label, i, j, (_backtrack(state, i, k, False), _backtrack(state, k, j, False)))


def cky_decode(chart: ScoreChart) -> DecodeResult:
    """Highest-scoring binary tree over the chart.

    Non-root nodes (including pre-terminals) may take any label, the dummy
    binarization label included; the root label is restricted to real
    labels.  Ties resolve to the smallest split point and lowest label
    index.
    """
    n = chart.n
    lm_all, la_all, _, la_real = label_max_tables(chart)
    bs, bk, splits = cky_fill(n, np.ascontiguousarray(chart.span_score), lm_all)

    binary = _backtrack((bk, la_all, la_real, chart.labels_c), 0, n, True)
    return DecodeResult(
        score=score_const_tree(binary, chart),
        stats=DecodeStats(cells=n * (n + 1) // 2, splits=int(splits)),
        binary_tree=binary,
    )
