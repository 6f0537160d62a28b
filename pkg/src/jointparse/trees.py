"""Core tree types: sentences, constituent trees, dependency trees, joint trees.

Spans are half-open fencepost pairs 0 <= i < j <= n.  Words are numbered
1..n; word k sits on the pre-terminal span (k-1, k).  Dependency trees use
0 as the pseudo-root governor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

EMPTY_LABEL = "∅"  # reserved label for binarization nodes
UNARY_SEP = "+"  # reserved separator for collapsed unary chains


class TreeError(ValueError):
    """Raised for structurally invalid trees or tree operations."""


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    pos_tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "pos_tags", tuple(self.pos_tags))
        if len(self.tokens) == 0:
            raise TreeError("sentence must contain at least one token")
        if len(self.tokens) != len(self.pos_tags):
            raise TreeError("tokens and pos_tags must have equal length")

    @property
    def n(self) -> int:
        return len(self.tokens)


def placeholder_sentence(n: int, tag: str = "X") -> Sentence:
    """Positional stand-in sentence (w1..wn) for text-free inputs like chart files."""
    return Sentence(tuple(f"w{i}" for i in range(1, n + 1)), (tag,) * n)


@dataclass(frozen=True, slots=True)
class ConstTree:
    """A constituent tree node; a whole tree is represented by its root node.

    Leaves (no children) are pre-terminals covering exactly one word.
    """

    label: str
    left: int
    right: int
    children: tuple["ConstTree", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def span(self) -> tuple[int, int]:
        return (self.left, self.right)

    @property
    def n(self) -> int:
        return self.right - self.left

    def iter_nodes(self) -> Iterator["ConstTree"]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def pretty(self) -> str:
        if self.is_leaf:
            return f"({self.label} <{self.left},{self.right}>)"
        return f"({self.label} " + " ".join(c.pretty() for c in self.children) + ")"


@dataclass(frozen=True, slots=True)
class DepTree:
    """Dependency tree over words 1..n: heads[m-1] is the governor of word m.

    Exactly one word has governor 0, and the head function must be acyclic.
    labels[m-1] is the relation on the arc into word m (the root word carries
    the root relation).
    """

    heads: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(int(h) for h in self.heads))
        object.__setattr__(self, "labels", tuple(self.labels))
        n = len(self.heads)
        if n == 0:
            raise TreeError("dependency tree must cover at least one word")
        if len(self.labels) != n:
            raise TreeError("heads and labels must have equal length")
        roots = [m for m in range(1, n + 1) if self.heads[m - 1] == 0]
        if len(roots) != 1:
            raise TreeError(f"exactly one word must attach to 0, found {roots}")
        for m in range(1, n + 1):
            h = self.heads[m - 1]
            if not 0 <= h <= n:
                raise TreeError(f"governor {h} of word {m} out of range 0..{n}")
            if h == m:
                raise TreeError(f"word {m} governs itself")
        # acyclicity: every word must reach 0 (words on checked paths are
        # marked done, so the whole pass is linear)
        state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 reaches 0
        for m in range(1, n + 1):
            path = []
            cur = m
            while cur != 0 and state[cur] == 0:
                state[cur] = 1
                path.append(cur)
                cur = self.heads[cur - 1]
            if cur != 0 and state[cur] == 1:
                raise TreeError(f"cycle through word {m}")
            for v in path:
                state[v] = 2

    @property
    def n(self) -> int:
        return len(self.heads)

    def arcs(self) -> list[tuple[int, int]]:
        """All (governor, modifier) pairs including the root arc."""
        return [(self.heads[m - 1], m) for m in range(1, self.n + 1)]


@dataclass(frozen=True, slots=True)
class JointNode:
    """Node of a head-annotated binary tree; head is a word index in (left, right]."""

    label: str
    left: int
    right: int
    head: int
    children: tuple["JointNode", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def span(self) -> tuple[int, int]:
        return (self.left, self.right)

    def iter_nodes(self) -> Iterator["JointNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True, slots=True)
class JointTree:
    """Binarized constituent tree with per-node head words plus arc labels.

    Each internal node induces one dependency arc, from the head child's head
    word to the other child's head word; together with the root arc
    (0, root.head) these arcs form a projective DepTree.  dep_labels[m-1]
    labels the arc into word m.
    """

    root: JointNode
    dep_labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dep_labels", tuple(self.dep_labels))

    @property
    def n(self) -> int:
        return self.root.right


def validate_const_tree(root: ConstTree, n: int | None = None, allow_empty_leaves: bool = False) -> None:
    """Check span bookkeeping, coverage, and placement of the reserved label."""
    if n is None:
        n = root.right
    if root.left != 0 or root.right != n:
        raise TreeError(f"root must span (0, {n}), got {root.span}")
    if root.label == EMPTY_LABEL and not root.is_leaf:
        raise TreeError(f"{EMPTY_LABEL} not allowed at the root")
    covered = []

    def walk(node: ConstTree) -> None:
        if node.left >= node.right:
            raise TreeError(f"empty span {node.span}")
        if node.is_leaf:
            if node.right - node.left != 1:
                raise TreeError(f"leaf must cover one word, got {node.span}")
            if node.label == EMPTY_LABEL and not allow_empty_leaves:
                raise TreeError(f"{EMPTY_LABEL} not allowed on a leaf at {node.span}")
            covered.append(node.left)
            return
        pos = node.left
        for child in node.children:
            if child.left != pos:
                raise TreeError(f"children of {node.span} not contiguous at {child.span}")
            pos = child.right
        if pos != node.right:
            raise TreeError(f"children of {node.span} do not cover it")
        for child in node.children:
            walk(child)

    walk(root)
    if covered != list(range(n)):
        raise TreeError("leaves do not cover words exactly once in order")


def validate_joint_tree(tree: JointTree) -> None:
    """Check binary shape, head feature sharing, and the induced dependency tree."""
    n = tree.n
    if len(tree.dep_labels) != n:
        raise TreeError("dep_labels must have one entry per word")

    def walk(node: JointNode) -> None:
        if not node.left < node.head <= node.right:
            raise TreeError(f"head {node.head} outside span {node.span}")
        if node.is_leaf:
            if node.right - node.left != 1:
                raise TreeError(f"leaf must cover one word, got {node.span}")
            return
        if len(node.children) != 2:
            raise TreeError(f"internal node {node.span} must have exactly 2 children")
        l, r = node.children
        if (l.left, l.right, r.left, r.right) != (node.left, l.right, l.right, node.right):
            raise TreeError(f"children of {node.span} do not split it")
        if sum(1 for c in node.children if c.head == node.head) != 1:
            raise TreeError(f"head of {node.span} must come from exactly one child")
        walk(l)
        walk(r)

    if tree.root.label == EMPTY_LABEL:
        raise TreeError(f"{EMPTY_LABEL} not allowed at the root")
    walk(tree.root)
    induced_dep_tree(tree)  # raises unless the arcs form a valid DepTree


def const_part(tree: JointTree) -> ConstTree:
    """Drop head annotations, keeping the binarized constituent structure."""

    def walk(node: JointNode) -> ConstTree:
        return ConstTree(node.label, node.left, node.right, tuple(walk(c) for c in node.children))

    return walk(tree.root)


def joint_arcs(tree: JointTree) -> list[tuple[int, int]]:
    """All induced (governor, modifier) arcs including the root arc."""
    arcs = [(0, tree.root.head)]

    def walk(node: JointNode) -> None:
        if node.is_leaf:
            return
        l, r = node.children
        mod = r.head if node.head == l.head else l.head
        arcs.append((node.head, mod))
        walk(l)
        walk(r)

    walk(tree.root)
    return arcs


def induced_dep_tree(tree: JointTree) -> DepTree:
    """Dependency tree read off the head annotations."""
    heads = [0] * tree.n
    for gov, mod in joint_arcs(tree):
        heads[mod - 1] = gov
    return DepTree(tuple(heads), tree.dep_labels)


def is_projective(dep: DepTree) -> bool:
    """True iff every word's dependency yield is a contiguous interval."""
    n = dep.n
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(1, n + 1):
        children[dep.heads[m - 1]].append(m)

    def yield_of(w: int) -> set[int]:
        out = {w}
        for c in children[w]:
            out |= yield_of(c)
        return out

    for w in range(1, n + 1):
        y = yield_of(w)
        if max(y) - min(y) + 1 != len(y):
            return False
    return True


def binarize(root: ConstTree) -> ConstTree:
    """Right-branching binarization: nodes with more than two children fold
    their tail into a chain of reserved-label nodes.

    (X a b c d) -> (X a (∅ b (∅ c d)))
    """

    def walk(node: ConstTree) -> ConstTree:
        if node.is_leaf:
            return node
        kids = [walk(c) for c in node.children]
        if len(kids) <= 2:
            return ConstTree(node.label, node.left, node.right, tuple(kids))
        chain = kids[-1]
        for kid in reversed(kids[1:-1]):
            chain = ConstTree(EMPTY_LABEL, kid.left, chain.right, (kid, chain))
        return ConstTree(node.label, node.left, node.right, (kids[0], chain))

    return walk(root)


def debinarize(root: ConstTree) -> ConstTree:
    """Splice out reserved-label internal nodes, restoring n-ary structure.

    Reserved-label leaves (possible in decoder output, where the empty label
    may win a pre-terminal cell) carry terminal coverage and are kept as-is.
    """
    if root.label == EMPTY_LABEL and not root.is_leaf:
        raise TreeError(f"{EMPTY_LABEL} at root: malformed input")

    def walk(node: ConstTree) -> ConstTree:
        if node.is_leaf:
            return node
        kids: list[ConstTree] = []
        for child in node.children:
            done = walk(child)
            if done.label == EMPTY_LABEL and not done.is_leaf:
                kids.extend(done.children)
            else:
                kids.append(done)
        return ConstTree(node.label, node.left, node.right, tuple(kids))

    return walk(root)


def collapse_unary(root: ConstTree) -> ConstTree:
    """Merge chains of single-child nodes over the same span into one node,
    joining labels with '+'.  Input labels may not contain the separator.
    """

    def walk(node: ConstTree) -> ConstTree:
        if UNARY_SEP in node.label:
            raise TreeError(f"label {node.label!r} contains reserved separator {UNARY_SEP!r}")
        parts = [node.label]
        cur = node
        while len(cur.children) == 1 and cur.children[0].span == cur.span:
            cur = cur.children[0]
            if UNARY_SEP in cur.label:
                raise TreeError(f"label {cur.label!r} contains reserved separator {UNARY_SEP!r}")
            parts.append(cur.label)
        label = UNARY_SEP.join(parts)
        if cur.is_leaf:
            return ConstTree(label, node.left, node.right)
        return ConstTree(label, node.left, node.right, tuple(walk(c) for c in cur.children))

    return walk(root)


def expand_unary(root: ConstTree) -> ConstTree:
    """Split '+'-joined labels back into unary chains (inverse of collapse_unary)."""

    def walk(node: ConstTree) -> ConstTree:
        parts = node.label.split(UNARY_SEP)
        if node.is_leaf:
            inner: ConstTree = ConstTree(parts[-1], node.left, node.right)
        else:
            inner = ConstTree(parts[-1], node.left, node.right, tuple(walk(c) for c in node.children))
        for label in reversed(parts[:-1]):
            inner = ConstTree(label, node.left, node.right, (inner,))
        return inner

    return walk(root)


def labeled_spans(root: ConstTree, include_leaves: bool = False) -> list[tuple[int, int, str]]:
    """(i, j, label) triples in pre-order; pre-terminals excluded by default."""
    out = []
    for node in root.iter_nodes():
        if node.is_leaf and not include_leaves:
            continue
        out.append((node.left, node.right, node.label))
    return out


@dataclass(frozen=True)
class HeadRule:
    """Search direction plus a child-label priority list."""

    direction: str  # "l2r" or "r2l"
    priority: tuple[str, ...] = ()

    def __post_init__(self):
        if self.direction not in ("l2r", "r2l"):
            raise TreeError(f"bad direction {self.direction!r}")
        object.__setattr__(self, "priority", tuple(self.priority))


@dataclass(frozen=True)
class HeadRuleTable:
    """Per-label head-finding rules with a mandatory default."""

    rules: Mapping[str, HeadRule]
    default: HeadRule

    def head_child(self, label: str, child_labels: Sequence[str]) -> int:
        """Index of the head child among child_labels (always defined)."""
        if not child_labels:
            raise TreeError("head_child requires at least one child")
        rule = self.rules.get(label, self.default)
        order = range(len(child_labels)) if rule.direction == "l2r" else range(len(child_labels) - 1, -1, -1)
        for want in rule.priority:
            for idx in order:
                if child_labels[idx] == want:
                    return idx
        return next(iter(order))
