"""Tree data types, validation, and structure transforms."""

import numpy as np
import pytest

from jointparse.trees import (
    EMPTY_LABEL,
    ConstTree,
    DepTree,
    HeadRule,
    HeadRuleTable,
    JointNode,
    JointTree,
    Sentence,
    TreeError,
    binarize,
    collapse_unary,
    const_part,
    debinarize,
    expand_unary,
    induced_dep_tree,
    is_projective,
    joint_arcs,
    labeled_spans,
    placeholder_sentence,
    validate_const_tree,
    validate_joint_tree,
)
from jointparse.synthetic import random_const_tree, random_joint_tree


def leaf(label, i):
    return ConstTree(label, i, i + 1)


def test_sentence_validation():
    s = Sentence(("a", "b"), ("DT", "NN"))
    assert s.n == 2
    with pytest.raises(TreeError):
        Sentence((), ())
    with pytest.raises(TreeError):
        Sentence(("a",), ("DT", "NN"))
    assert placeholder_sentence(3) == Sentence(("w1", "w2", "w3"), ("X", "X", "X"))


def test_const_tree_span_checks():
    t = ConstTree("S", 0, 2, (leaf("A", 0), leaf("B", 1)))
    assert t.span == (0, 2) and t.n == 2
    assert [nd.label for nd in t.iter_nodes()] == ["S", "A", "B"]
    validate_const_tree(t, 2)
    with pytest.raises(TreeError):  # empty span
        validate_const_tree(ConstTree("S", 0, 2, (ConstTree("A", 0, 0), leaf("B", 1))), 2)
    with pytest.raises(TreeError):  # gap between children
        validate_const_tree(ConstTree("S", 0, 3, (leaf("A", 0), leaf("B", 2))), 3)
    with pytest.raises(TreeError):  # children overrun the parent span
        validate_const_tree(ConstTree("S", 0, 2, (leaf("A", 0), leaf("B", 1), leaf("C", 2))), 2)


def test_validate_const_tree_empty_labels():
    bad = ConstTree(EMPTY_LABEL, 0, 1)
    with pytest.raises(TreeError):
        validate_const_tree(bad, 1)
    validate_const_tree(bad, 1, allow_empty_leaves=True)
    with pytest.raises(TreeError):  # wrong length
        validate_const_tree(leaf("NN", 0), 2)


def test_dep_tree_validation():
    d = DepTree((2, 0, 2), ("nsubj", "root", "obj"))
    assert d.n == 3 and d.arcs() == [(2, 1), (0, 2), (2, 3)]
    with pytest.raises(TreeError):  # two roots
        DepTree((0, 0), ("root", "root"))
    with pytest.raises(TreeError):  # no root
        DepTree((2, 1), ("a", "b"))
    with pytest.raises(TreeError):  # self-governance
        DepTree((1, 0), ("a", "root"))
    with pytest.raises(TreeError):  # head out of range
        DepTree((5, 0), ("a", "root"))
    with pytest.raises(TreeError):  # cycle 2<->3
        DepTree((0, 3, 2), ("root", "a", "b"))
    with pytest.raises(TreeError):  # label count mismatch
        DepTree((0, 1), ("root",))


def test_joint_tree_arcs_and_parts():
    #      S[h=2]
    #     /      \
    #  NP[h=1]  VP[h=2]=leaf? no: need binary internal over 1 leaf each
    jt = JointTree(
        JointNode("S", 0, 3, 2, (
            JointNode("NP", 0, 1, 1),
            JointNode("VP", 1, 3, 2, (
                JointNode("VB", 1, 2, 2),
                JointNode("NN", 2, 3, 3),
            )),
        )),
        ("nsubj", "root", "obj"),
    )
    validate_joint_tree(jt)
    assert sorted(joint_arcs(jt)) == [(0, 2), (2, 1), (2, 3)]
    assert induced_dep_tree(jt) == DepTree((2, 0, 2), ("nsubj", "root", "obj"))
    cp = const_part(jt)
    assert labeled_spans(cp) == [(0, 3, "S"), (1, 3, "VP")]
    with pytest.raises(TreeError):  # head outside span
        validate_joint_tree(JointTree(JointNode("S", 0, 1, 2), ("root",)))


def test_joint_root_must_not_be_empty_label():
    with pytest.raises(TreeError):
        validate_joint_tree(JointTree(JointNode(EMPTY_LABEL, 0, 1, 1), ("root",)))


def test_projectivity():
    assert is_projective(DepTree((2, 0, 2), ("a", "root", "b")))
    # arc (2,4) crosses word 3 governed outside: classic crossing configuration
    assert not is_projective(DepTree((0, 4, 1, 1), ("root", "a", "b", "c")))


def test_binarize_round_trip():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(1, 10))
        t = random_const_tree(rng, n)
        b = binarize(collapse_unary(t))
        for nd in b.iter_nodes():
            assert nd.is_leaf or len(nd.children) == 2
        assert expand_unary(debinarize(b)) == t
        assert debinarize(binarize(t)) == t


def test_unary_round_trip():
    inner = ConstTree("VP", 0, 2, (leaf("VB", 0), leaf("NN", 1)))
    chain = ConstTree("S", 0, 2, (ConstTree("X", 0, 2, (inner,)),))
    collapsed = collapse_unary(chain)
    assert collapsed.label == "S+X+VP"
    assert expand_unary(collapsed) == chain
    rng = np.random.default_rng(2)
    for _ in range(50):
        t = random_const_tree(rng, int(rng.integers(1, 10)))
        assert expand_unary(collapse_unary(t)) == t


def test_head_rule_table():
    table = HeadRuleTable(
        {"S": HeadRule("r2l", ("VP",)), "NP": HeadRule("l2r", ("NN", "NP"))},
        default=HeadRule("l2r"),
    )
    assert table.head_child("S", ["NP", "VP", "PP"]) == 1  # priority hit
    assert table.head_child("S", ["NP", "PP"]) == 1  # fallback: first from right
    assert table.head_child("NP", ["DT", "NN", "NN"]) == 1  # first from left
    assert table.head_child("ZZZ", ["A", "B"]) == 0  # default rule
    with pytest.raises(TreeError):
        table.head_child("S", [])
    with pytest.raises(TreeError):
        HeadRule("sideways")


def test_random_joint_tree_is_valid_and_projective():
    rng = np.random.default_rng(3)
    for _ in range(100):
        jt = random_joint_tree(rng, int(rng.integers(1, 11)))
        validate_joint_tree(jt)
        assert is_projective(induced_dep_tree(jt))
