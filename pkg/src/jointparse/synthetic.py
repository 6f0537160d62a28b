"""Seeded random generators for trees, sentences, and dependency structures.

All generators take a numpy Generator so callers control determinism.
Generated joint trees stay inside the joint decoders' search space: the
reserved empty label appears only on internal nodes that are right children
on the modifier side, which is exactly the shape right-branching
binarization produces, so debinarize/binarize round-trips are exact.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .trees import (
    EMPTY_LABEL,
    ConstTree,
    DepTree,
    JointNode,
    JointTree,
    Sentence,
    induced_dep_tree,
    is_projective,
)

DEFAULT_CLABELS = (EMPTY_LABEL, "S", "NP", "VP", "PP", "ADJP", "ADVP", "SBAR")
DEFAULT_DLABELS = ("root", "nsubj", "obj", "nmod", "amod", "advmod")
DEFAULT_TAGS = ("NN", "VB", "DT", "JJ", "IN")


def _choice(rng: np.random.Generator, items: Sequence[str]) -> str:
    return items[int(rng.integers(0, len(items)))]


def random_joint_tree(rng: np.random.Generator, n: int,
                      labels_c: Sequence[str] = DEFAULT_CLABELS,
                      labels_d: Sequence[str] = DEFAULT_DLABELS,
                      p_empty: float = 0.35) -> JointTree:
    """Random joint tree with heads, labels, and relation labels."""
    if n < 1:
        raise ValueError("n must be at least 1")
    real = [l for l in labels_c if l != EMPTY_LABEL]
    if not real:
        raise ValueError("need at least one non-reserved constituent label")

    def build(i: int, j: int) -> tuple:
        # skeleton nodes: [left, right, head, children]
        if j - i == 1:
            return [i, j, i + 1, ()]
        k = int(rng.integers(i + 1, j))
        left = build(i, k)
        right = build(k, j)
        head = left[2] if rng.integers(0, 2) == 0 else right[2]
        return [i, j, head, (left, right)]

    def label(node, is_root: bool, empty_ok: bool) -> JointNode:
        i, j, head, children = node
        if not children:
            return JointNode(_choice(rng, real), i, j, head)
        if not is_root and empty_ok and rng.random() < p_empty:
            lab = EMPTY_LABEL
        else:
            lab = _choice(rng, real)
        left, right = children
        # only a right child on the modifier side may take the reserved label
        lc = label(left, False, False)
        rc = label(right, False, head == left[2] and bool(right[3]))
        return JointNode(lab, i, j, head, (lc, rc))

    root = label(build(0, n), True, False)
    dep_labels = tuple(_choice(rng, labels_d) for _ in range(n))
    return JointTree(root, dep_labels)


def random_const_tree(rng: np.random.Generator, n: int,
                      labels: Sequence[str] = DEFAULT_CLABELS[1:],
                      tags: Sequence[str] = DEFAULT_TAGS,
                      max_branch: int = 4, p_unary: float = 0.15) -> ConstTree:
    """Random n-ary constituent tree with pre-terminal tags and optional unary chains."""
    if n < 1:
        raise ValueError("n must be at least 1")

    def build(i: int, j: int) -> ConstTree:
        if j - i == 1:
            node = ConstTree(_choice(rng, tags), i, j)
            if rng.random() < p_unary:
                node = ConstTree(_choice(rng, labels), i, j, (node,))
            return node
        width = j - i
        parts = int(rng.integers(2, min(width, max_branch) + 1))
        cuts = sorted(rng.choice(np.arange(i + 1, j), size=parts - 1, replace=False).tolist())
        bounds = [i, *cuts, j]
        children = tuple(build(bounds[t], bounds[t + 1]) for t in range(parts))
        return ConstTree(_choice(rng, labels), i, j, children)

    root = build(0, n)
    if root.n == 1 and root.is_leaf:
        root = ConstTree(_choice(rng, labels), 0, 1, (root,))
    return root


def random_sentence(rng: np.random.Generator, n: int,
                    tags: Sequence[str] = DEFAULT_TAGS) -> Sentence:
    tokens = tuple(f"w{i}" for i in range(1, n + 1))
    return Sentence(tokens, tuple(_choice(rng, tags) for _ in range(n)))


def sentence_for_tree(tree: ConstTree) -> Sentence:
    """Placeholder tokens with tags read off the tree's pre-terminals."""
    leaves = sorted((node for node in tree.iter_nodes() if node.is_leaf), key=lambda nd: nd.left)
    return Sentence(tuple(f"w{nd.left + 1}" for nd in leaves), tuple(nd.label for nd in leaves))


def random_projective_dep_tree(rng: np.random.Generator, n: int,
                               labels_d: Sequence[str] = DEFAULT_DLABELS) -> DepTree:
    jt = random_joint_tree(rng, n, labels_d=labels_d)
    return induced_dep_tree(jt)


def random_arborescence(rng: np.random.Generator, n: int,
                        labels_d: Sequence[str] = DEFAULT_DLABELS) -> DepTree:
    """Uniformly sampled head vector, resampled until it forms a valid tree."""
    if n < 1:
        raise ValueError("n must be at least 1")
    labels = tuple(_choice(rng, labels_d) for _ in range(n))
    while True:
        heads = tuple(int(h) if h < m else int(h) + 1
                      for m, h in enumerate(rng.integers(0, n, size=n), start=1))
        try:
            return DepTree(heads, labels)
        except ValueError:
            continue


def random_nonprojective_dep_tree(rng: np.random.Generator, n: int,
                                  labels_d: Sequence[str] = DEFAULT_DLABELS) -> DepTree:
    if n < 3:
        raise ValueError("non-projective trees need at least 3 words")
    while True:
        dep = random_arborescence(rng, n, labels_d)
        if not is_projective(dep):
            return dep
