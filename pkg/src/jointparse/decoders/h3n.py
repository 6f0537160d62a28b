"""Cubic-time joint constituent/dependency decoding.

Keeps one canonical head per chart cell: at every split the child whose
head word carries the strictly higher head score (1/level, from the chart's
head-level annotations) becomes the head side, the left child on ties.
With head levels taken from a gold tree this recovers the exact optimum;
on arbitrary charts it is a lower bound for the head-indexed decoder.
"""

from __future__ import annotations

import numpy as np

from ..charts import ScoreChart
from ..trees import JointNode
from ._kernels import h3n_fill
from .common import (
    DecodeResult,
    DecodeStats,
    augmented_arcs,
    joint_result,
    label_max_tables,
)


# Backtracking lives at module level: a recursive closure would tie the DP
# tables into a reference cycle, leaving their disposal to the cyclic
# collector instead of plain refcounting.
def _backtrack(state, i: int, j: int, head_side: bool) -> JointNode:
    bk, hs, shead, la_all, la_real, labels = state
    li = la_real[i, j] if head_side else la_all[i, j]
    label = labels[li]
    if j - i == 1:
        return JointNode(label, i, j, i + 1)
    k = int(bk[i, j])
    hl = int(hs[i, k])
    hr = int(hs[k, j])
    if shead[hr] > shead[hl]:
        left = _backtrack(state, i, k, False)
        right = _backtrack(state, k, j, True)
        head = hr
    else:
        left = _backtrack(state, i, k, True)
        right = _backtrack(state, k, j, False)
        head = hl
    return JointNode(label, i, j, head, (left, right))


def h3n_decode(chart: ScoreChart) -> DecodeResult:
    n = chart.n
    lm_all, la_all, lm_real, la_real = label_max_tables(chart)
    shead = chart.head_scores()
    bs, hs, bk, splits = h3n_fill(
        n,
        np.ascontiguousarray(chart.span_score),
        lm_all,
        lm_real,
        augmented_arcs(chart),
        shead,
    )
    state = (bk, hs, shead, la_all, la_real, chart.labels_c)
    root = _backtrack(state, 0, n, True)
    return joint_result(root, chart, DecodeStats(cells=n * (n + 1) // 2, splits=int(splits)))
