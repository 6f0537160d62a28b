"""Exhaustive-search reference decoders for small inputs.

Structure spaces (binary tree shapes, projective head vectors, spanning
arborescences, head-annotated shapes) are enumerated once per length and
cached; every candidate is then scored with the same canonical scorers the
dynamic-programming decoders report through, so optimal scores compare
exactly.

The projective enumerator mirrors the complete/incomplete span grammar of
the projective decoder, which derives every projective single-root tree
exactly once; the length-1..7 counts are 1, 2, 7, 30, 143, 728, 3876.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..charts import ScoreChart
from ..trees import ConstTree, DepTree, JointNode, JointTree
from .common import (
    DecodeError,
    DecodeResult,
    DecodeStats,
    assign_dep_labels,
    joint_result,
    label_max_tables,
    score_const_tree,
    score_dep_tree,
    score_joint_tree,
)

MAX_CONST_N = 8
MAX_PROJ_N = 7
MAX_ARBO_N = 6
MAX_JOINT_N = 5

NEG = -np.inf


def _check_limit(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise DecodeError(f"exhaustive {what} search supports up to {limit} words, got {n}")


# ---------------------------------------------------------------------------
# structure enumeration (cached; independent of any chart)

@lru_cache(maxsize=None)
def binary_shapes(i: int, j: int) -> tuple:
    """All binary tree shapes over span (i, j) as (i, j, left, right) tuples."""
    if j - i == 1:
        return ((i, j, None, None),)
    out = []
    for k in range(i + 1, j):
        for left in binary_shapes(i, k):
            for right in binary_shapes(k, j):
                out.append((i, j, left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _pcr(s: int, t: int) -> tuple:
    """Complete span headed at its left end s: arc sets over words s..t."""
    if s == t:
        return ((),)
    out = []
    for k in range(s + 1, t + 1):
        for a in _pir(s, k):
            for b in _pcr(k, t):
                out.append(a + b)
    return tuple(out)


@lru_cache(maxsize=None)
def _pcl(s: int, t: int) -> tuple:
    """Complete span headed at its right end t."""
    if s == t:
        return ((),)
    out = []
    for k in range(s, t):
        for a in _pcl(s, k):
            for b in _pil(k, t):
                out.append(a + b)
    return tuple(out)


@lru_cache(maxsize=None)
def _pir(s: int, t: int) -> tuple:
    """Incomplete span with pending arc s -> t."""
    out = []
    for k in range(s, t):
        for a in _pcr(s, k):
            for b in _pcl(k + 1, t):
                out.append(a + b + ((t, s),))
    return tuple(out)


@lru_cache(maxsize=None)
def _pil(s: int, t: int) -> tuple:
    """Incomplete span with pending arc t -> s."""
    out = []
    for k in range(s, t):
        for a in _pcr(s, k):
            for b in _pcl(k + 1, t):
                out.append(a + b + ((s, t),))
    return tuple(out)


@lru_cache(maxsize=None)
def projective_head_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    """Every projective single-root head vector over n words, each once."""
    out = []
    for r in range(1, n + 1):
        for a in _pcl(1, r):
            for b in _pcr(r, n):
                heads = [0] * n
                for m, h in a + b:
                    heads[m - 1] = h
                out.append(tuple(heads))
    return tuple(out)


@lru_cache(maxsize=None)
def arborescence_head_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    """Every single-root spanning arborescence head vector over n words."""
    out = []
    choices = [[h for h in range(n + 1) if h != m] for m in range(1, n + 1)]
    for combo in itertools.product(*choices):
        if combo.count(0) != 1:
            continue
        ok = True
        for m in range(1, n + 1):
            cur = m
            steps = 0
            while cur != 0 and steps <= n:
                cur = combo[cur - 1]
                steps += 1
            if cur != 0:
                ok = False
                break
        if ok:
            out.append(combo)
    return tuple(out)


@lru_cache(maxsize=None)
def joint_skeletons(n: int, label: str = "S") -> tuple[JointNode, ...]:
    """Every head-annotated binary tree over n words, uniformly labeled.

    Covers every shape with every per-node choice of head child.
    """

    def expand(shape) -> list[JointNode]:
        i, j, left, right = shape
        if left is None:
            return [JointNode(label, i, j, i + 1)]
        out = []
        for l in expand(left):
            for r in expand(right):
                out.append(JointNode(label, i, j, l.head, (l, r)))
                out.append(JointNode(label, i, j, r.head, (l, r)))
        return out

    roots = []
    for shape in binary_shapes(0, n):
        roots.extend(expand(shape))
    return tuple(roots)


# ---------------------------------------------------------------------------
# chart-specific exhaustive decoders

def brute_force_const(chart: ScoreChart, limit: int = MAX_CONST_N) -> DecodeResult:
    """Best binary tree by scoring every shape (root label real, rest free)."""
    n = chart.n
    _check_limit(n, limit, "constituent")
    _, la_all, _, la_real = label_max_tables(chart)

    def build(shape, at_root: bool) -> ConstTree:
        i, j, left, right = shape
        li = la_real[i, j] if at_root else la_all[i, j]
        label = chart.labels_c[li]
        if left is None:
            return ConstTree(label, i, j)
        return ConstTree(label, i, j, (build(left, False), build(right, False)))

    best = None
    best_score = NEG
    shapes = binary_shapes(0, n)
    for shape in shapes:
        tree = build(shape, True)
        s = score_const_tree(tree, chart)
        if s > best_score:
            best_score = s
            best = tree
    return DecodeResult(
        score=best_score,
        stats=DecodeStats(cells=n * (n + 1) // 2, splits=len(shapes)),
        binary_tree=best,
    )


def _best_dep(chart: ScoreChart, vectors) -> DecodeResult:
    best = None
    best_score = NEG
    for heads in vectors:
        s = 0.0
        for m in range(1, chart.n + 1):
            s += float(chart.arc_score[heads[m - 1], m])
        if s > best_score:
            best_score = s
            best = heads
    labels = [""] * chart.n
    for h, m, lab in assign_dep_labels([(h, m) for m, h in enumerate(best, 1)], chart):
        labels[m - 1] = lab
    dep = DepTree(best, tuple(labels))
    return DecodeResult(
        score=score_dep_tree(dep, chart),
        stats=DecodeStats(cells=chart.n, splits=len(vectors)),
        dep_tree=dep,
    )


def brute_force_projective(chart: ScoreChart, limit: int = MAX_PROJ_N) -> DecodeResult:
    """Best projective single-root tree by scoring every head vector."""
    _check_limit(chart.n, limit, "projective")
    return _best_dep(chart, projective_head_vectors(chart.n))


def brute_force_arborescence(chart: ScoreChart, limit: int = MAX_ARBO_N) -> DecodeResult:
    """Best single-root spanning arborescence by scoring every head vector."""
    _check_limit(chart.n, limit, "arborescence")
    return _best_dep(chart, arborescence_head_vectors(chart.n))


def brute_force_dep(chart: ScoreChart, projective: bool) -> DecodeResult:
    """Exhaustive dependency search, restricted to projective trees or not."""
    if projective:
        return brute_force_projective(chart)
    return brute_force_arborescence(chart)


def brute_force_joint(chart: ScoreChart, limit: int = MAX_JOINT_N) -> DecodeResult:
    """Best head-annotated binary tree by scoring every skeleton.

    Per candidate, node labels are maximized by role (root and head-side
    children from real labels, modifier side over all labels) and relations
    per arc, then the whole candidate is canonically scored.
    """
    n = chart.n
    _check_limit(n, limit, "joint")
    _, la_all, _, la_real = label_max_tables(chart)

    def relabel(node: JointNode, head_side: bool) -> JointNode:
        li = la_real[node.left, node.right] if head_side else la_all[node.left, node.right]
        label = chart.labels_c[li]
        if node.is_leaf:
            return JointNode(label, node.left, node.right, node.head)
        l, r = node.children
        return JointNode(
            label,
            node.left,
            node.right,
            node.head,
            (relabel(l, node.head == l.head), relabel(r, node.head == r.head)),
        )

    best = None
    best_score = NEG
    skeletons = joint_skeletons(n)
    for skel in skeletons:
        root = relabel(skel, True)
        arcs = [(0, root.head)]
        stack = [root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                continue
            l, r = node.children
            arcs.append((node.head, r.head if node.head == l.head else l.head))
            stack.extend((l, r))
        labels = [""] * n
        for h, m, lab in assign_dep_labels(arcs, chart):
            labels[m - 1] = lab
        jt = JointTree(root, tuple(labels))
        s = score_joint_tree(jt, chart)
        if s > best_score:
            best_score = s
            best = jt
    return joint_result(best.root, chart, DecodeStats(cells=n, splits=len(skeletons)))
