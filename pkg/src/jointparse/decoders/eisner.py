"""Exact projective dependency decoding (first-order, single root word)."""

from __future__ import annotations

import numpy as np

from ..charts import ScoreChart
from ..trees import DepTree
from ._kernels import eisner_fill
from .common import DecodeResult, DecodeStats, assign_dep_labels, score_dep_tree

_IR, _IL, _CR, _CL = 0, 1, 2, 3


def eisner_decode(chart: ScoreChart) -> DecodeResult:
    """Highest-scoring projective tree under the arc-factored objective.

    The objective sums arc scores only (root arc included); relations are
    assigned afterwards per arc.  Exactly one word attaches to 0 because the
    root choice splits the sentence into a left and a right complete half.
    """
    n = chart.n
    kir, kcr, kcl, root, splits = eisner_fill(n, np.ascontiguousarray(chart.arc_score))
    heads = [0] * n
    root = int(root)
    stack = [(_CL, 1, root), (_CR, root, n)]
    while stack:
        op, s, t = stack.pop()
        if op == _IR:
            heads[t - 1] = s
            k = int(kir[s, t])
            stack.append((_CR, s, k))
            stack.append((_CL, k + 1, t))
        elif op == _IL:
            heads[s - 1] = t
            k = int(kir[s, t])
            stack.append((_CR, s, k))
            stack.append((_CL, k + 1, t))
        elif op == _CR:
            if s == t:
                continue
            k = int(kcr[s, t])
            stack.append((_IR, s, k))
            stack.append((_CR, k, t))
        else:
            if s == t:
                continue
            k = int(kcl[s, t])
            stack.append((_CL, s, k))
            stack.append((_IL, k, t))
    return _finish(heads, chart, DecodeStats(cells=2 * n * (n + 1), splits=int(splits)))


def _finish(heads: list[int], chart: ScoreChart, stats: DecodeStats) -> DecodeResult:
    labels = [""] * chart.n
    for h, m, lab in assign_dep_labels([(h, m) for m, h in enumerate(heads, 1)], chart):
        labels[m - 1] = lab
    dep = DepTree(tuple(heads), tuple(labels))
    return DecodeResult(score=score_dep_tree(dep, chart), stats=stats, dep_tree=dep)
