"""Treebank conversions: dependency↔constituency and joint assembly."""

import numpy as np
import pytest

from jointparse.convert import (
    ConvertError,
    const_to_dep,
    dep_to_const,
    joint_from_parallel,
    pseudo_tree_to_dep,
    read_head_rules,
    write_head_rules,
)
from jointparse.synthetic import (
    DEFAULT_TAGS,
    random_joint_tree,
    random_nonprojective_dep_tree,
    random_projective_dep_tree,
)
from jointparse.trees import (
    ConstTree,
    DepTree,
    Sentence,
    const_part,
    debinarize,
    expand_unary,
    induced_dep_tree,
    labeled_spans,
    validate_const_tree,
)


def test_dep_to_const_basic_shape():
    dep = DepTree((2, 0, 2), ("nsubj", "root", "obj"))
    sent = Sentence(("the", "cat", "sat"), ("DT", "NN", "VB"))
    tree = dep_to_const(dep, sent)
    # phrase labeled by the head word's relation; head leaf keeps its POS tag
    assert tree.label == "root"
    assert [(c.label, c.span) for c in tree.children] == \
        [("nsubj", (0, 1)), ("NN", (1, 2)), ("obj", (2, 3))]
    validate_const_tree(tree, 3)
    with pytest.raises(ConvertError):
        dep_to_const(dep, Sentence(("a", "b"), ("A", "B")))


def test_dep_to_const_single_word_collapses():
    tree = dep_to_const(DepTree((0,), ("root",)), Sentence(("hi",), ("UH",)))
    assert tree == ConstTree("root", 0, 1)


def test_dep_to_const_nonprojective_fix_up():
    # word 2 governed by word 4 across word 3's attachment to word 1
    dep = DepTree((0, 4, 1, 1), ("root", "r2", "r3", "r4"))
    sent = Sentence(("a", "b", "c", "d"), ("T1", "T2", "T3", "T4"))
    tree = dep_to_const(dep, sent)
    validate_const_tree(tree, 4)
    leaves = [nd for nd in tree.iter_nodes() if nd.is_leaf]
    assert sorted(nd.left for nd in leaves) == [nd.left for nd in leaves]


def test_round_trip_projective():
    rng = np.random.default_rng(21)
    for _ in range(100):
        n = int(rng.integers(1, 11))
        dep = random_projective_dep_tree(rng, n)
        sent = Sentence(tuple(f"t{i}" for i in range(n)),
                        tuple(DEFAULT_TAGS[i % len(DEFAULT_TAGS)] for i in range(n)))
        back = pseudo_tree_to_dep(dep_to_const(dep, sent), sent)
        assert back == dep


def test_pseudo_tree_requires_unique_tag_leaf():
    # relation label equals the POS tag -> two candidate head leaves
    dep = DepTree((2, 0), ("NN", "root"))
    sent = Sentence(("a", "b"), ("NN", "VB"))
    tree = dep_to_const(dep, sent)
    with pytest.raises(ConvertError, match="head-leaf candidates"):
        pseudo_tree_to_dep(tree, sent)


def test_const_to_dep_with_rules():
    rules = read_head_rules("DEFAULT l2r\nS r2l VP\n")
    tree = ConstTree("S", 0, 2, (ConstTree("NP", 0, 1), ConstTree("VP", 1, 2)))
    dep = const_to_dep(tree, rules)
    assert dep.heads == (2, 0)
    assert dep.labels == ("NP", "S")


def test_const_to_dep_priority_and_default():
    rules = read_head_rules("DEFAULT r2l\nNP l2r NN\n")
    tree = ConstTree(
        "S", 0, 3,
        (ConstTree("NP", 0, 2, (ConstTree("DT", 0, 1), ConstTree("NN", 1, 2))),
         ConstTree("VP", 2, 3)),
    )
    dep = const_to_dep(tree, rules)
    # NP's head is its NN (priority); S's head is VP (default right-to-left)
    assert dep.heads == (2, 3, 0)


def test_head_rule_file_round_trip_and_errors():
    table = read_head_rules("# comment\nDEFAULT l2r\nS r2l VP SBAR\nNP l2r NN\n")
    assert table.rules["S"].direction == "r2l"
    assert table.rules["S"].priority == ("VP", "SBAR")
    text = write_head_rules(table)
    assert read_head_rules(text) == table
    for bad, frag in [
        ("S r2l VP\n", "DEFAULT"),
        ("DEFAULT l2r\nS sideways VP\n", "line 2"),
        ("DEFAULT l2r\nS r2l A\nS l2r B\n", "duplicate"),
        ("DEFAULT l2r\nDEFAULT r2l\n", "duplicate"),
        ("DEFAULT l2r\nS\n", "line 2"),
    ]:
        with pytest.raises(ConvertError, match=frag):
            read_head_rules(bad)


def test_joint_from_parallel_round_trip():
    rng = np.random.default_rng(33)
    for _ in range(100):
        jt = random_joint_tree(rng, int(rng.integers(1, 11)))
        const = expand_unary(debinarize(const_part(jt)))
        back = joint_from_parallel(const, induced_dep_tree(jt))
        assert back == jt


def test_joint_from_parallel_rejects_inconsistent_inputs():
    jt = random_joint_tree(np.random.default_rng(1), 5)
    const = expand_unary(debinarize(const_part(jt)))
    dep = induced_dep_tree(jt)
    with pytest.raises(ConvertError, match="projective"):
        joint_from_parallel(const, DepTree((0, 5, 1, 1, 1), ("root", "a", "b", "c", "d")))
    if dep.n >= 2:
        # a tree over a different length cannot pair with the constituents
        with pytest.raises(ConvertError):
            joint_from_parallel(const, DepTree((0,), ("root",)))


def test_joint_from_parallel_flags_arc_mismatch():
    #  ((A a) (B b)) with dependency 1 <- 2: span (0,2) is headed by word 1,
    #  so consistency requires arc 1 -> 2; a dep tree with arc 2 -> 1 conflicts
    #  at the root instead, leaving span (0,2) without an outside governor.
    const = ConstTree("S", 0, 2, (ConstTree("A", 0, 1), ConstTree("B", 1, 2)))
    ok = joint_from_parallel(const, DepTree((0, 1), ("root", "x")))
    assert ok.root.head == 1
    jt2 = joint_from_parallel(const, DepTree((2, 0), ("y", "root")))
    assert jt2.root.head == 2


def test_labeled_spans_of_converted_trees_cover_every_word():
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(3, 10))
        dep = random_nonprojective_dep_tree(rng, n)
        sent = Sentence(tuple(f"t{i}" for i in range(n)), ("X",) * n)
        tree = dep_to_const(dep, sent)
        assert tree.span == (0, n)
        assert all(0 <= i < j <= n for i, j, _ in labeled_spans(tree, include_leaves=True))
