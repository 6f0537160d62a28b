"""Shared decoder plumbing: results, stats, and canonical objective scorers.

Every decoder reports the score of its returned structure through the
canonical scorers in this module, so decoder output and exhaustive-search
oracles compare exactly rather than up to summation order.

The constituent objective sums label scores over all nodes plus span scores
over all non-root nodes (each node's span score is charged where its parent
splits, so the root span score never enters).  The dependency objective sums
arc scores only, root arc included.  The joint objective adds, per induced
arc, the arc score plus the chosen relation score; the root arc contributes
its raw arc score only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..charts import ScoreChart
from ..trees import (
    ConstTree,
    DepTree,
    JointTree,
    const_part,
    debinarize,
    expand_unary,
    induced_dep_tree,
)


class DecodeError(ValueError):
    """Raised for charts a decoder cannot handle."""


@dataclass(frozen=True)
class DecodeStats:
    """Work counters: chart cells filled and split evaluations performed.

    For the head-indexed joint decoder, splits counts split x head-pair
    evaluations; for exhaustive search it counts scored structures.
    """

    cells: int = 0
    splits: int = 0


class DecodeResult:
    """Decoded structure with its canonical score.

    Only the representation a decoder actually searched is stored eagerly;
    the other views are derived from it on first access and cached, so
    decoding pays for the search and the canonical rescore, not for format
    conversions nobody asked for.  Views a result cannot supply (e.g. the
    dependency view of a pure constituent decode) stay None.
    """

    __slots__ = ("score", "stats", "_joint", "_binary", "_const", "_dep")

    def __init__(
        self,
        score: float,
        stats: DecodeStats,
        const_tree: ConstTree | None = None,
        dep_tree: DepTree | None = None,
        joint_tree: JointTree | None = None,
        binary_tree: ConstTree | None = None,
    ):
        object.__setattr__(self, "score", score)
        object.__setattr__(self, "stats", stats)
        object.__setattr__(self, "_joint", joint_tree)
        object.__setattr__(self, "_binary", binary_tree)
        object.__setattr__(self, "_const", const_tree)
        object.__setattr__(self, "_dep", dep_tree)

    def __setattr__(self, name, value):
        raise AttributeError(f"DecodeResult is immutable; cannot set {name!r}")

    def __repr__(self) -> str:
        return f"DecodeResult(score={self.score!r}, stats={self.stats!r})"

    def _key(self):
        return (self.score, self.stats, self.joint_tree, self.binary_tree,
                self.const_tree, self.dep_tree)

    def __eq__(self, other):
        if not isinstance(other, DecodeResult):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def joint_tree(self) -> JointTree | None:
        return self._joint

    @property
    def binary_tree(self) -> ConstTree | None:
        if self._binary is None and self._joint is not None:
            object.__setattr__(self, "_binary", const_part(self._joint))
        return self._binary

    @property
    def const_tree(self) -> ConstTree | None:
        if self._const is None and self.binary_tree is not None:
            object.__setattr__(self, "_const", expand_unary(debinarize(self.binary_tree)))
        return self._const

    @property
    def dep_tree(self) -> DepTree | None:
        if self._dep is None and self._joint is not None:
            object.__setattr__(self, "_dep", induced_dep_tree(self._joint))
        return self._dep


def label_index(chart: ScoreChart) -> dict[str, int]:
    return {label: i for i, label in enumerate(chart.labels_c)}


def dep_label_index(chart: ScoreChart) -> dict[str, int]:
    return {label: i for i, label in enumerate(chart.labels_d)}


def label_max_tables(chart: ScoreChart):
    """Per-cell maxima over all labels and over non-reserved labels.

    Returns (max_all, arg_all, max_real, arg_real) for cells with i < j;
    argmax ties resolve to the lowest label index.
    """
    from ._kernels import label_max_fill

    return label_max_fill(chart.n, np.ascontiguousarray(chart.label_score), chart.empty_index)


def augmented_arcs(chart: ScoreChart) -> np.ndarray:
    """Arc score plus the best relation score, folded for joint decoding."""
    from ._kernels import arc_aug_fill

    return arc_aug_fill(
        np.ascontiguousarray(chart.arc_score), np.ascontiguousarray(chart.dep_label_score)
    )


def assign_dep_labels(arcs: list[tuple[int, int]], chart: ScoreChart) -> list[tuple[int, int, str]]:
    """Best relation per arc; ties resolve to the lowest label index."""
    if not arcs:
        return []
    for h, m in arcs:
        if not (0 <= h <= chart.n and 1 <= m <= chart.n and h != m):
            raise DecodeError(f"arc ({h}, {m}) out of range for n={chart.n}")
    hs = np.fromiter((h for h, _ in arcs), dtype=np.int64, count=len(arcs))
    ms = np.fromiter((m for _, m in arcs), dtype=np.int64, count=len(arcs))
    picks = np.argmax(chart.dep_label_score[hs, ms], axis=1)
    return [(h, m, chart.labels_d[int(i)]) for (h, m), i in zip(arcs, picks)]


def score_const_tree(tree: ConstTree, chart: ScoreChart) -> float:
    """Canonical constituent objective of a (binarized) tree."""
    idx = label_index(chart)
    li, lj, ll = [], [], []
    si, sj = [], []
    stack = [tree]
    while stack:
        node = stack.pop()
        try:
            ll.append(idx[node.label])
        except KeyError:
            raise DecodeError(f"label {node.label!r} not in chart label set") from None
        li.append(node.left)
        lj.append(node.right)
        for c in node.children:
            si.append(c.left)
            sj.append(c.right)
            stack.append(c)
    return float(chart.label_score[li, lj, ll].sum() + chart.span_score[si, sj].sum())


def score_dep_tree(dep: DepTree, chart: ScoreChart) -> float:
    """Canonical dependency objective: arc scores only, root arc included."""
    heads = np.fromiter(dep.heads, dtype=np.int64, count=dep.n)
    return float(chart.arc_score[heads, np.arange(1, dep.n + 1)].sum())


def score_joint_tree(tree: JointTree, chart: ScoreChart) -> float:
    """Canonical joint objective for a head-annotated binary tree."""
    cidx = label_index(chart)
    didx = dep_label_index(chart)
    li, lj, ll = [], [], []
    si, sj = [], []
    ah, am, al = [], [], []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        try:
            ll.append(cidx[node.label])
        except KeyError:
            raise DecodeError(f"label {node.label!r} not in chart label set") from None
        li.append(node.left)
        lj.append(node.right)
        if node.is_leaf:
            continue
        l, r = node.children
        mod = r.head if node.head == l.head else l.head
        try:
            al.append(didx[tree.dep_labels[mod - 1]])
        except KeyError:
            raise DecodeError(
                f"relation {tree.dep_labels[mod - 1]!r} not in chart label set"
            ) from None
        ah.append(node.head)
        am.append(mod)
        si.append(l.left)
        sj.append(l.right)
        si.append(r.left)
        sj.append(r.right)
        stack.append(l)
        stack.append(r)
    return float(
        chart.label_score[li, lj, ll].sum()
        + chart.span_score[si, sj].sum()
        + chart.arc_score[ah, am].sum()
        + chart.dep_label_score[ah, am, al].sum()
        + chart.arc_score[0, tree.root.head]
    )


def joint_result(tree_root, chart: ScoreChart, stats: DecodeStats) -> DecodeResult:
    """Assemble the full result for a decoded head-annotated binary tree."""
    arcs = [(0, tree_root.head)]
    stack = [tree_root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            continue
        l, r = node.children
        mod = r.head if node.head == l.head else l.head
        arcs.append((node.head, mod))
        stack.extend((l, r))
    labels = [""] * chart.n
    for h, m, lab in assign_dep_labels(arcs, chart):
        labels[m - 1] = lab
    jt = JointTree(tree_root, tuple(labels))
    return DecodeResult(score=score_joint_tree(jt, chart), stats=stats, joint_tree=jt)
