"""Exact non-projective dependency decoding (maximum spanning arborescence).

Single-root decoding is obtained exactly by solving one constrained problem
per candidate root word: all arcs out of node 0 except (0, r) are masked
off, a greedy-contraction arborescence search runs on the masked graph, and
the best candidate over r wins (smallest r on ties).
"""

from __future__ import annotations

import numpy as np

from ..charts import ScoreChart
from ..trees import DepTree
from .common import DecodeResult, DecodeStats, assign_dep_labels, score_dep_tree

NEG = -np.inf


def _find_cycle(head: list[int], n_nodes: int) -> list[int] | None:
    color = [0] * n_nodes  # 0 unseen, 1 on path, 2 done
    color[0] = 2
    for start in range(1, n_nodes):
        if color[start]:
            continue
        path = []
        cur = start
        while color[cur] == 0:
            color[cur] = 1
            path.append(cur)
            cur = head[cur]
        if color[cur] == 1:  # found a new cycle; cut it out of the path
            return path[path.index(cur):]
        for v in path:
            color[v] = 2
    return None


def _max_arborescence(score: np.ndarray, ops: list[int]) -> list[int]:
    """Greedy-contraction search on a dense score matrix rooted at node 0.

    Returns the in-arc head of every node (entry 0 unused).  Ties resolve
    to the smallest head index.  ops[0] accumulates arc comparisons.
    """
    n_nodes = score.shape[0]
    ops[0] += n_nodes * (n_nodes - 1)
    head = [0] * n_nodes
    for m in range(1, n_nodes):
        best = NEG
        bh = -1
        for h in range(n_nodes):
            if h != m and score[h, m] > best:
                best = score[h, m]
                bh = h
        head[m] = bh
    cycle = _find_cycle(head, n_nodes)
    if cycle is None:
        return head
    cyc = set(cycle)
    outside = [v for v in range(n_nodes) if v not in cyc]
    c_idx = len(outside)  # supernode index in the contracted graph
    pos = {v: i for i, v in enumerate(outside)}
    sub = np.full((c_idx + 1, c_idx + 1), NEG)
    for a in outside:
        for b in outside:
            if a != b:
                sub[pos[a], pos[b]] = score[a, b]
    # arcs into the cycle: replace one cycle arc, charging the difference
    enter_via = {}
    for a in outside:
        best = NEG
        bm = -1
        for m in cycle:
            v = score[a, m] - score[head[m], m]
            if v > best:
                best = v
                bm = m
        sub[pos[a], c_idx] = best
        enter_via[a] = bm
    # arcs out of the cycle: best source vertex per target
    leave_via = {}
    for b in outside:
        if b == 0:
            continue
        best = NEG
        bv = -1
        for v in cycle:
            if score[v, b] > best:
                best = score[v, b]
                bv = v
        sub[c_idx, pos[b]] = best
        leave_via[b] = bv
    sub_head = _max_arborescence(sub, ops)
    full = [0] * n_nodes
    inv = {i: v for v, i in pos.items()}
    for b in outside:
        if b == 0:
            continue
        h = sub_head[pos[b]]
        full[b] = inv[h] if h != c_idx else leave_via[b]
    entering = inv[sub_head[c_idx]]
    broken = enter_via[entering]
    for m in cycle:
        full[m] = entering if m == broken else head[m]
    return full


def mst_decode(chart: ScoreChart) -> DecodeResult:
    """Highest-scoring arborescence with exactly one word attached to 0."""
    n = chart.n
    arc = chart.arc_score
    best_heads = None
    best_score = NEG
    ops = [0]
    for r in range(1, n + 1):
        masked = arc.copy()
        masked[0, :] = NEG
        masked[0, r] = arc[0, r]
        head = _max_arborescence(masked, ops)
        heads = tuple(head[1:])
        cand = sum(float(arc[heads[m - 1], m]) for m in range(1, n + 1))
        if cand > best_score:
            best_score = cand
            best_heads = heads
    labels = [""] * n
    for h, m, lab in assign_dep_labels([(h, m) for m, h in enumerate(best_heads, 1)], chart):
        labels[m - 1] = lab
    dep = DepTree(best_heads, tuple(labels))
    return DecodeResult(
        score=score_dep_tree(dep, chart),
        stats=DecodeStats(cells=n, splits=ops[0]),
        dep_tree=dep,
    )
