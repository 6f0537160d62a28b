"""Treebank conversions between dependency, constituent, and joint views.

Dependency-to-constituent synthesis builds one phrase per word (dependent
phrases in surface order around a leaf for the head word) and labels each
phrase with the relation between its head word and that word's governor.
Non-projective inputs then go through a fix-up pass that moves children
breaking span contiguity up to the nearest ancestor where they fit, so the
output always has leaves in surface order and contiguous spans; projective
inputs come out untouched.

The reverse extraction relies on the head-leaf convention: inside each
phrase exactly one direct leaf child carries the part-of-speech tag of its
word (dependent phrases are labeled with relations instead).  Tag and
relation alphabets must therefore be disjoint for extraction to be
well-defined.
"""

from __future__ import annotations

from .trees import (
    EMPTY_LABEL,
    ConstTree,
    DepTree,
    HeadRule,
    HeadRuleTable,
    JointNode,
    JointTree,
    Sentence,
    binarize,
    collapse_unary,
    is_projective,
    validate_const_tree,
    validate_joint_tree,
)


class ConvertError(ValueError):
    """Raised when structures cannot be converted or are inconsistent."""


# ---------------------------------------------------------------------------
# dependency -> constituent

class _Scratch:
    """Mutable phrase under construction: a head word plus child items.

    Items are either _Scratch phrases or the phrase's own head leaf,
    represented by the bare word index.
    """

    __slots__ = ("word", "items", "start", "end")

    def __init__(self, word: int):
        self.word = word
        self.items = []
        self.start = word - 1  # settled during fix-up
        self.end = word


def _interval(item) -> tuple[int, int]:
    if isinstance(item, _Scratch):
        return (item.start, item.end)
    return (item - 1, item)


def _fix_up(node: _Scratch, parent: _Scratch | None) -> None:
    """Post-order contiguity pass.

    After all descendants are settled, keep the maximal run of interval-
    adjacent items around the head leaf and move the rest up to the parent
    (which is processed later, so evicted items keep climbing until they
    fit).  Every move strictly decreases the mover's depth, so the pass
    terminates; at the root the items tile the whole sentence and nothing
    moves.
    """
    for item in list(node.items):
        if isinstance(item, _Scratch):
            _fix_up(item, node)
    node.items.sort(key=_interval)
    head_at = next(i for i, item in enumerate(node.items)
                   if not isinstance(item, _Scratch) and item == node.word)
    lo = head_at
    while lo > 0 and _interval(node.items[lo - 1])[1] == _interval(node.items[lo])[0]:
        lo -= 1
    hi = head_at
    while hi + 1 < len(node.items) and _interval(node.items[hi])[1] == _interval(node.items[hi + 1])[0]:
        hi += 1
    evicted = node.items[:lo] + node.items[hi + 1:]
    if evicted:
        if parent is None:
            raise ConvertError("root phrase cannot evict children")  # unreachable: root items tile the sentence
        parent.items.extend(evicted)
        node.items = node.items[lo:hi + 1]
    node.start = _interval(node.items[0])[0]
    node.end = _interval(node.items[-1])[1]


def _emit(node: _Scratch, dep: DepTree, sentence: Sentence) -> ConstTree:
    relation = dep.labels[node.word - 1]
    if len(node.items) == 1:
        # only the head leaf: collapse the phrase to a leaf with its relation
        return ConstTree(relation, node.word - 1, node.word)
    children = []
    for item in node.items:
        if isinstance(item, _Scratch):
            children.append(_emit(item, dep, sentence))
        else:
            children.append(ConstTree(sentence.pos_tags[item - 1], item - 1, item))
    return ConstTree(relation, node.start, node.end, tuple(children))


def dep_to_const(dep: DepTree, sentence: Sentence) -> ConstTree:
    """Synthesize a constituent tree from a dependency tree.

    Works for non-projective input too; see the module docstring for the
    construction and fix-up rules.
    """
    n = dep.n
    if sentence.n != n:
        raise ConvertError(f"sentence has {sentence.n} words, dependency tree {n}")
    dependents: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(1, n + 1):
        if dep.heads[m - 1] != 0:
            dependents[dep.heads[m - 1]].append(m)
    root_word = dep.heads.index(0) + 1

    def build(w: int) -> _Scratch:
        node = _Scratch(w)
        placed_head = False
        for d in sorted(dependents[w]):
            if d > w and not placed_head:
                node.items.append(w)
                placed_head = True
            node.items.append(build(d))
        if not placed_head:
            node.items.append(w)
        return node

    root = build(root_word)
    _fix_up(root, None)
    return _emit(root, dep, sentence)


def pseudo_tree_to_dep(tree: ConstTree, sentence: Sentence) -> DepTree:
    """Recover the dependency tree encoded by dep_to_const output.

    In each phrase, the unique direct leaf child labeled with its word's
    part-of-speech tag is the head; all other children are dependents of
    that word, with their phrase labels as relations.
    """
    validate_const_tree(tree, sentence.n)
    heads = [0] * sentence.n
    labels = [""] * sentence.n

    def walk(node: ConstTree) -> int:
        if node.is_leaf:
            return node.left + 1
        cands = [c for c in node.children
                 if c.is_leaf and c.label == sentence.pos_tags[c.left]]
        if len(cands) != 1:
            raise ConvertError(
                f"span ({node.left}, {node.right}) has {len(cands)} head-leaf "
                f"candidates, expected exactly 1"
            )
        head = cands[0].left + 1
        for c in node.children:
            if c is cands[0]:
                continue
            m = walk(c)
            heads[m - 1] = head
            labels[m - 1] = c.label
        return head

    r = walk(tree)
    heads[r - 1] = 0
    labels[r - 1] = tree.label
    return DepTree(tuple(heads), tuple(labels))


# ---------------------------------------------------------------------------
# constituent -> dependency

def const_to_dep(tree: ConstTree, rules: HeadRuleTable) -> DepTree:
    """Head-rule percolation: each node's head word comes from the child the
    rule table selects; every other child contributes an arc labeled with
    its constituent label.  The root word attaches to 0 with the root
    node's label."""
    validate_const_tree(tree, tree.right)
    for node in tree.iter_nodes():
        if node.label == EMPTY_LABEL:
            raise ConvertError(f"span ({node.left}, {node.right}) carries the reserved dummy label")
    n = tree.right
    heads = [0] * n
    labels = [""] * n

    def walk(node: ConstTree) -> int:
        if node.is_leaf:
            return node.left + 1
        child_heads = [walk(c) for c in node.children]
        idx = rules.head_child(node.label, [c.label for c in node.children])
        for i, c in enumerate(node.children):
            if i != idx:
                heads[child_heads[i] - 1] = child_heads[idx]
                labels[child_heads[i] - 1] = c.label
        return child_heads[idx]

    r = walk(tree)
    heads[r - 1] = 0
    labels[r - 1] = tree.label
    return DepTree(tuple(heads), tuple(labels))


# ---------------------------------------------------------------------------
# parallel constituent + dependency -> joint

def joint_from_parallel(const: ConstTree, dep: DepTree) -> JointTree:
    """Assemble a head-annotated binary tree from parallel annotations.

    The constituent tree is unary-collapsed and binarized; each span's head
    is the unique word inside it whose governor lies outside, and every
    induced arc must appear in the dependency tree.  Inconsistent pairs
    raise an error naming the offending span.
    """
    if const.left != 0:
        raise ConvertError("constituent tree must start at position 0")
    if const.right != dep.n:
        raise ConvertError(f"constituent tree covers {const.right} words, dependency tree {dep.n}")
    if not is_projective(dep):
        raise ConvertError("dependency tree is not projective")
    binary = binarize(collapse_unary(const))

    def head_of(i: int, j: int) -> int:
        cands = [w for w in range(i + 1, j + 1) if not (i < dep.heads[w - 1] <= j)]
        if len(cands) != 1:
            raise ConvertError(
                f"span ({i}, {j}) has {len(cands)} words governed from outside "
                f"the span, expected exactly 1"
            )
        return cands[0]

    def walk(node: ConstTree) -> JointNode:
        if node.is_leaf:
            return JointNode(node.label, node.left, node.right, node.left + 1)
        lc, rc = node.children
        ln = walk(lc)
        rn = walk(rc)
        h = head_of(node.left, node.right)
        mod = rn.head if ln.head == h else ln.head
        if dep.heads[mod - 1] != h:
            raise ConvertError(
                f"span ({node.left}, {node.right}): induced arc ({h}, {mod}) "
                f"is not in the dependency tree"
            )
        return JointNode(node.label, node.left, node.right, h, (ln, rn))

    root = walk(binary)
    if dep.heads[root.head - 1] != 0:
        raise ConvertError(f"root word {root.head} is not governed by the pseudo-root")
    joint = JointTree(root, dep.labels)
    validate_joint_tree(joint)
    return joint


# ---------------------------------------------------------------------------
# head-rule files

def read_head_rules(text: str) -> HeadRuleTable:
    """Parse a rule table: `<label> <l2r|r2l> <child-label> ...` lines plus
    a mandatory `DEFAULT <l2r|r2l>` line; '#' starts a comment."""
    rules: dict[str, HeadRule] = {}
    default: HeadRule | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ConvertError(f"line {lineno}: expected `<label> <l2r|r2l> ...`")
        if parts[1] not in ("l2r", "r2l"):
            raise ConvertError(f"line {lineno}: direction must be l2r or r2l, got {parts[1]!r}")
        if parts[0] == "DEFAULT":
            if len(parts) != 2:
                raise ConvertError(f"line {lineno}: DEFAULT takes only a direction")
            if default is not None:
                raise ConvertError(f"line {lineno}: duplicate DEFAULT")
            default = HeadRule(parts[1])
        else:
            if parts[0] in rules:
                raise ConvertError(f"line {lineno}: duplicate rule for {parts[0]!r}")
            rules[parts[0]] = HeadRule(parts[1], tuple(parts[2:]))
    if default is None:
        raise ConvertError("missing DEFAULT line")
    return HeadRuleTable(rules, default)


def write_head_rules(table: HeadRuleTable) -> str:
    lines = [f"DEFAULT {table.default.direction}"]
    for label in sorted(table.rules):
        rule = table.rules[label]
        lines.append(" ".join([label, rule.direction, *rule.priority]))
    return "\n".join(lines) + "\n"
