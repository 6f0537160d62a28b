"""Scoring predicted structures against gold.

Bracket scoring is a simplified version of the usual constituent evaluator:
labeled spans are matched as multisets, pre-terminals are excluded, the
root span is counted, and there is no parameter file, label equivalence, or
length bucketing.  Attachment scores exclude words whose part-of-speech tag
is in the punctuation set.  All scores are percentages in [0, 100]; empty
denominators score 100 when both sides are empty and 0 otherwise.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence

from .trees import ConstTree, DepTree, expand_unary, labeled_spans

DEFAULT_PUNCT_TAGS = frozenset({"``", "''", ":", ",", "."})


class MetricError(ValueError):
    """Raised for incomparable inputs (length mismatches)."""


def _ratio(num: int, den: int, other_den: int) -> float:
    if den == 0:
        return 100.0 if other_den == 0 else 0.0
    return 100.0 * num / den


def _f1(p: float, r: float) -> float:
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def bracket_counts(pred: ConstTree, gold: ConstTree) -> tuple[int, int, int]:
    """(matched, |pred|, |gold|) labeled non-leaf spans, multiset matching.

    Unary chains are expanded first so every level contributes a span.
    """
    if (pred.left, pred.right) != (gold.left, gold.right):
        raise MetricError(
            f"span mismatch: predicted ({pred.left}, {pred.right}) "
            f"vs gold ({gold.left}, {gold.right})"
        )
    ps = Counter(labeled_spans(expand_unary(pred)))
    gs = Counter(labeled_spans(expand_unary(gold)))
    matched = sum((ps & gs).values())
    return matched, sum(ps.values()), sum(gs.values())


def evalb(pred: ConstTree, gold: ConstTree) -> tuple[float, float, float]:
    """Labeled bracket precision, recall, and F1 for one sentence pair.

    Identical trees score (100, 100, 100); two bare pre-terminals (no
    non-leaf spans on either side) also score 100 by the empty-denominator
    rule.
    """
    matched, np_, ng = bracket_counts(pred, gold)
    lp = _ratio(matched, np_, ng)
    lr = _ratio(matched, ng, np_)
    if np_ == 0 and ng == 0:
        return 100.0, 100.0, 100.0
    return lp, lr, _f1(lp, lr)


def corpus_evalb(pairs: Sequence[tuple[ConstTree, ConstTree]]) -> tuple[float, float, float]:
    """Corpus-level bracket scores: counts aggregate before dividing."""
    matched = np_ = ng = 0
    for pred, gold in pairs:
        m, p, g = bracket_counts(pred, gold)
        matched += m
        np_ += p
        ng += g
    lp = _ratio(matched, np_, ng)
    lr = _ratio(matched, ng, np_)
    if np_ == 0 and ng == 0:
        return 100.0, 100.0, 100.0
    return lp, lr, _f1(lp, lr)


def attachment_counts(
    pred: DepTree,
    gold: DepTree,
    pos_tags: Sequence[str],
    punct_tags: frozenset[str] | set[str] = DEFAULT_PUNCT_TAGS,
) -> tuple[int, int, int]:
    """(head matches, head+label matches, counted words), punctuation excluded."""
    if pred.n != gold.n:
        raise MetricError(f"length mismatch: predicted {pred.n} vs gold {gold.n}")
    if len(pos_tags) != gold.n:
        raise MetricError(f"length mismatch: {len(pos_tags)} tags for {gold.n} words")
    uas = las = total = 0
    for m in range(1, gold.n + 1):
        if pos_tags[m - 1] in punct_tags:
            continue
        total += 1
        if pred.heads[m - 1] == gold.heads[m - 1]:
            uas += 1
            if pred.labels[m - 1] == gold.labels[m - 1]:
                las += 1
    return uas, las, total


def attachment_scores(
    pred: DepTree,
    gold: DepTree,
    pos_tags: Sequence[str],
    punct_tags: frozenset[str] | set[str] = DEFAULT_PUNCT_TAGS,
) -> tuple[float, float]:
    """(UAS, LAS) for one sentence pair; 100 when no words are counted."""
    uas, las, total = attachment_counts(pred, gold, pos_tags, punct_tags)
    if total == 0:
        return 100.0, 100.0
    return 100.0 * uas / total, 100.0 * las / total


def corpus_attachment(
    items: Sequence[tuple[DepTree, DepTree, Sequence[str]]],
    punct_tags: frozenset[str] | set[str] = DEFAULT_PUNCT_TAGS,
) -> tuple[float, float]:
    """Corpus (UAS, LAS) over (pred, gold, pos_tags) triples."""
    uas = las = total = 0
    for pred, gold, tags in items:
        u, l, t = attachment_counts(pred, gold, tags, punct_tags)
        uas += u
        las += l
        total += t
    if total == 0:
        return 100.0, 100.0
    return 100.0 * uas / total, 100.0 * las / total


def head_level_accuracy(
    pred_levels: Sequence[int | None], gold_levels: Sequence[int | None]
) -> float:
    """Fraction of positions with exactly equal level class (NONE matches NONE)."""
    if len(pred_levels) != len(gold_levels):
        raise MetricError(
            f"length mismatch: {len(pred_levels)} predicted levels vs {len(gold_levels)} gold"
        )
    if not gold_levels:
        return 100.0
    hits = sum(1 for p, g in zip(pred_levels, gold_levels) if p == g)
    return 100.0 * hits / len(gold_levels)


def span_head_accuracy(pred, gold) -> float:
    """Secondary reading of head accuracy: per-span head words.

    Over the gold tree's internal spans, counts how many appear in the
    predicted tree with the same head word.  100 when the gold tree has no
    internal spans.
    """
    gold_heads = {(nd.left, nd.right): nd.head for nd in gold.root.iter_nodes() if not nd.is_leaf}
    pred_heads = {(nd.left, nd.right): nd.head for nd in pred.root.iter_nodes() if not nd.is_leaf}
    if not gold_heads:
        return 100.0
    hits = sum(1 for span, h in gold_heads.items() if pred_heads.get(span) == h)
    return 100.0 * hits / len(gold_heads)
