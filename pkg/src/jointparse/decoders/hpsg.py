"""Exact joint constituent/dependency decoding with head-indexed cells.

Every chart cell carries the head word explicitly (quintic time overall:
cubic cells times a head and a modifier index), so this decoder is exact
for the joint objective and serves as the reference the cubic decoder is
measured against.
"""

from __future__ import annotations

import numpy as np

from ..charts import ScoreChart
from ..trees import JointNode
from ._kernels import hpsg_fill
from .common import (
    DecodeResult,
    DecodeStats,
    augmented_arcs,
    joint_result,
    label_max_tables,
)


def hpsg_decode(chart: ScoreChart) -> DecodeResult:
    n = chart.n
    lm_all, la_all, lm_real, la_real = label_max_tables(chart)
    bs, bk, bm, pairs = hpsg_fill(
        n,
        np.ascontiguousarray(chart.span_score),
        lm_all,
        lm_real,
        augmented_arcs(chart),
    )
    best = -np.inf
    besth = -1
    for h in range(1, n + 1):
        v = float(bs[0, n, h]) + float(chart.arc_score[0, h])
        if v > best:
            best = v
            besth = h

    state = (bk, bm, la_all, la_real, chart.labels_c)
    root = _backtrack(state, 0, n, besth, True)
    cells = n * (n + 1) // 2  # spans; each holds up to n head entries
    return joint_result(root, chart, DecodeStats(cells=cells, splits=int(pairs)))


# Module level rather than a recursive closure: a closure would tie the DP
# tables into a reference cycle, leaving their disposal to the cyclic
# collector instead of plain refcounting.
def _backtrack(state, i: int, j: int, h: int, head_side: bool) -> JointNode:
    bk, bm, la_all, la_real, labels = state
    li = la_real[i, j] if head_side else la_all[i, j]
    label = labels[li]
    if j - i == 1:
        return JointNode(label, i, j, i + 1)
    k = int(bk[i, j, h])
    m = int(bm[i, j, h])
    if h <= k:
        left = _backtrack(state, i, k, h, True)
        right = _backtrack(state, k, j, m, False)
    else:
        left = _backtrack(state, i, k, m, False)
        right = _backtrack(state, k, j, h, True)
    return JointNode(label, i, j, h, (left, right))
