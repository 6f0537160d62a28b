"""Span levels, per-word head level classes, and head-score properties.

The span level of a node counts dependency arcs from the root span: the root
span has level 1 and every child span sits one level below its parent.  A
word's level class is the smallest level among the spans it heads (its own
pre-terminal included), clamped to the cap; a word heading no span belongs to
the distinguished None class, whose head score is exactly 0.0.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .trees import JointTree

LEVEL_CAP = 32


class HeadPropertyViolation(NamedTuple):
    """A head-score property broken at `span` with witness word `word`.

    prop 1: `word` is a non-head word in `span` scoring >= the span's head.
    prop 2: `word` heads `span` with a score different from its score elsewhere.
    prop 3: `word` heads a span nested inside `span` and outscores its head.
    """

    prop: int
    span: tuple[int, int]
    word: int


def span_levels(gold: JointTree) -> dict[tuple[int, int], int]:
    """Level of every span in the tree; the root span has level 1."""
    levels: dict[tuple[int, int], int] = {}

    def walk(node, level: int) -> None:
        levels[node.span] = level
        for child in node.children:
            walk(child, level + 1)

    walk(gold.root, 1)
    return levels


def gold_head_levels(gold: JointTree, cap: int = LEVEL_CAP) -> tuple[int | None, ...]:
    """Per-word level class: min level over the spans the word heads, clamped to cap."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    best: dict[int, int] = {}

    def walk(node, level: int) -> None:
        cur = best.get(node.head)
        if cur is None or level < cur:
            best[node.head] = level
        for child in node.children:
            walk(child, level + 1)

    walk(gold.root, 1)
    return tuple(min(best[m], cap) if m in best else None for m in range(1, gold.n + 1))


def head_score(level: int | None) -> float:
    """Score 1/level for a level class; exactly 0.0 for the None class."""
    if level is None:
        return 0.0
    if level < 1:
        raise ValueError(f"level must be positive, got {level}")
    return 1.0 / level


def check_head_properties(scores: Sequence[float], gold: JointTree) -> list[HeadPropertyViolation]:
    """Check a per-word head-score table against a gold tree.

    Property 1 demands the head of each span strictly outscore every other
    word in it (ties violate).  Property 2 demands a word's score be identical
    across all spans it heads; with a single per-word table it cannot fail,
    but it is checked rather than assumed.  Property 3 demands a span's head
    score at least the head of any span nested inside it; checking each
    parent-child edge is equivalent by transitivity of >=.
    """
    n = gold.n
    if len(scores) != n:
        raise ValueError("scores must have one entry per word")
    violations: list[HeadPropertyViolation] = []
    score_seen: dict[int, float] = {}

    def walk(node) -> None:
        s_head = scores[node.head - 1]
        for w in range(node.left + 1, node.right + 1):
            if w != node.head and scores[w - 1] >= s_head:
                violations.append(HeadPropertyViolation(1, node.span, w))
        if node.head in score_seen:
            if scores[node.head - 1] != score_seen[node.head]:
                violations.append(HeadPropertyViolation(2, node.span, node.head))
        else:
            score_seen[node.head] = scores[node.head - 1]
        for child in node.children:
            if scores[child.head - 1] > s_head:
                violations.append(HeadPropertyViolation(3, node.span, child.head))
            walk(child)

    walk(gold.root)
    return violations
