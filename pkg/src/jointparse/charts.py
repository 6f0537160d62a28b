"""Score charts: the explicit per-sentence score tables all decoders consume.

A chart stores, for a sentence of length n:
  span_score[i, j]           scalar score of span (i, j), 0 <= i < j <= n
  label_score[i, j, l]       score of constituent label l on span (i, j)
  arc_score[h, m]            score of arc h -> m, h in 0..n, m in 1..n, h != m
  dep_label_score[h, m, l]   score of relation l on arc h -> m
  head_level[m-1]            level class of word m: 1..LEVEL_CAP or None

Charts are immutable by convention after construction; use with_head_levels
to derive a variant.  Entries omitted from chart files default to 0.0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .trees import EMPTY_LABEL, JointTree, joint_arcs

LEVEL_CAP = 32

_build_count = 0


def chart_build_count() -> int:
    """Number of ScoreChart constructions so far in this process.

    Benchmark code snapshots this around its timed regions to prove that
    timing covers decode calls only, never chart construction.
    """
    return _build_count


class ChartError(ValueError):
    """Raised for malformed charts or chart files."""


@dataclass(frozen=True)
class ScoreChart:
    n: int
    labels_c: tuple[str, ...]
    labels_d: tuple[str, ...]
    span_score: np.ndarray
    label_score: np.ndarray
    arc_score: np.ndarray
    dep_label_score: np.ndarray
    head_level: tuple[int | None, ...]
    sent_id: str = "0"

    def __post_init__(self):
        global _build_count
        _build_count += 1
        object.__setattr__(self, "labels_c", tuple(self.labels_c))
        object.__setattr__(self, "labels_d", tuple(self.labels_d))
        object.__setattr__(self, "head_level", tuple(self.head_level))
        n = self.n
        if n < 1:
            raise ChartError("chart length must be at least 1")
        if EMPTY_LABEL not in self.labels_c:
            raise ChartError(f"constituent label set must contain {EMPTY_LABEL}")
        if len(self.labels_c) < 2:
            raise ChartError("constituent label set needs at least one non-reserved label")
        if len(set(self.labels_c)) != len(self.labels_c) or len(set(self.labels_d)) != len(self.labels_d):
            raise ChartError("label sets must not contain duplicates")
        if not self.labels_d:
            raise ChartError("dependency label set must be non-empty")
        shapes = {
            "span_score": (n + 1, n + 1),
            "label_score": (n + 1, n + 1, len(self.labels_c)),
            "arc_score": (n + 1, n + 1),
            "dep_label_score": (n + 1, n + 1, len(self.labels_d)),
        }
        for name, shape in shapes.items():
            arr = getattr(self, name)
            if arr.shape != shape:
                raise ChartError(f"{name} has shape {arr.shape}, expected {shape}")
            if not np.all(np.isfinite(arr)):
                raise ChartError(f"{name} contains non-finite values")
        if len(self.head_level) != n:
            raise ChartError("head_level must have one entry per word")
        for lvl in self.head_level:
            if lvl is not None and not 1 <= lvl <= LEVEL_CAP:
                raise ChartError(f"head level {lvl} outside 1..{LEVEL_CAP}")

    @property
    def empty_index(self) -> int:
        return self.labels_c.index(EMPTY_LABEL)

    def head_scores(self) -> np.ndarray:
        """Per-word head score 1/level, exactly 0.0 for the None class.

        Indexed by word (entry 0 is unused and 0.0).
        """
        out = np.zeros(self.n + 1)
        for m, lvl in enumerate(self.head_level, start=1):
            if lvl is not None:
                out[m] = 1.0 / lvl
        return out

    def with_head_levels(self, head_level: Sequence[int | None]) -> "ScoreChart":
        return replace(self, head_level=tuple(head_level))


def random_chart(n: int, labels_c: Sequence[str], labels_d: Sequence[str],
                 seed: int, sent_id: str | None = None) -> ScoreChart:
    """Deterministic chart with i.i.d. uniform [-1, 1] scores and uniform levels."""
    rng = np.random.default_rng(seed)
    lc, ld = len(labels_c), len(labels_d)
    span = rng.uniform(-1.0, 1.0, (n + 1, n + 1))
    label = rng.uniform(-1.0, 1.0, (n + 1, n + 1, lc))
    arc = rng.uniform(-1.0, 1.0, (n + 1, n + 1))
    dlabel = rng.uniform(-1.0, 1.0, (n + 1, n + 1, ld))
    levels = tuple(int(v) for v in rng.integers(1, LEVEL_CAP + 1, n))
    # zero the cells outside the valid index ranges
    tri = np.tril(np.ones((n + 1, n + 1), dtype=bool))  # i >= j
    span[tri] = 0.0
    label[tri] = 0.0
    arc[:, 0] = 0.0
    np.fill_diagonal(arc, 0.0)
    dlabel[:, 0] = 0.0
    dlabel[np.eye(n + 1, dtype=bool)] = 0.0
    return ScoreChart(n, tuple(labels_c), tuple(labels_d), span, label, arc, dlabel,
                      levels, sent_id if sent_id is not None else str(seed))


def oracle_chart(gold: JointTree, margin: float = 1.0,
                 labels_c: Sequence[str] | None = None,
                 labels_d: Sequence[str] | None = None,
                 sent_id: str = "0") -> ScoreChart:
    """Chart whose unique optimum under any joint decoder is the gold tree.

    Gold labeled spans, gold arcs, and gold arc labels score +margin;
    everything else scores 0.  Head levels come from the gold tree.
    """
    from .heads import gold_head_levels  # local import to avoid a cycle

    if margin <= 0:
        raise ChartError("margin must be positive")
    n = gold.n
    if labels_c is None:
        seen = {node.label for node in gold.root.iter_nodes()}
        seen.discard(EMPTY_LABEL)
        labels_c = (EMPTY_LABEL, *sorted(seen))
    if labels_d is None:
        labels_d = tuple(sorted(set(gold.dep_labels)))
    labels_c = tuple(labels_c)
    labels_d = tuple(labels_d)
    span = np.zeros((n + 1, n + 1))
    label = np.zeros((n + 1, n + 1, len(labels_c)))
    arc = np.zeros((n + 1, n + 1))
    dlabel = np.zeros((n + 1, n + 1, len(labels_d)))
    for node in gold.root.iter_nodes():
        try:
            li = labels_c.index(node.label)
        except ValueError:
            raise ChartError(f"gold label {node.label!r} missing from labels_c") from None
        label[node.left, node.right, li] = margin
    heads = {mod: gov for gov, mod in joint_arcs(gold)}
    for m in range(1, n + 1):
        gov = heads[m]
        arc[gov, m] = margin
        try:
            di = labels_d.index(gold.dep_labels[m - 1])
        except ValueError:
            raise ChartError(f"gold relation {gold.dep_labels[m - 1]!r} missing from labels_d") from None
        dlabel[gov, m, di] = margin
    levels = gold_head_levels(gold, cap=LEVEL_CAP)
    return ScoreChart(n, labels_c, labels_d, span, label, arc, dlabel, levels, sent_id)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def write_charts(charts: Sequence[ScoreChart]) -> str:
    """Serialize charts to the text chart format; exact zeros are omitted."""
    lines: list[str] = []
    for chart in charts:
        n = chart.n
        lines.append(f"#SENT {chart.sent_id} {n}")
        lines.append("CLABELS " + " ".join(chart.labels_c))
        lines.append("DLABELS " + " ".join(chart.labels_d))
        for i in range(n):
            for j in range(i + 1, n + 1):
                if chart.span_score[i, j] != 0.0:
                    lines.append(f"SPAN {i} {j} {_fmt(chart.span_score[i, j])}")
                for li in range(len(chart.labels_c)):
                    if chart.label_score[i, j, li] != 0.0:
                        lines.append(f"LABEL {i} {j} {li} {_fmt(chart.label_score[i, j, li])}")
        for h in range(n + 1):
            for m in range(1, n + 1):
                if h == m:
                    continue
                if chart.arc_score[h, m] != 0.0:
                    lines.append(f"ARC {h} {m} {_fmt(chart.arc_score[h, m])}")
                for di in range(len(chart.labels_d)):
                    if chart.dep_label_score[h, m, di] != 0.0:
                        lines.append(f"DLABEL {h} {m} {di} {_fmt(chart.dep_label_score[h, m, di])}")
        for m in range(1, n + 1):
            lvl = chart.head_level[m - 1]
            lines.append(f"HEADLVL {m} {'NONE' if lvl is None else lvl}")
    return "\n".join(lines) + "\n"


def write_chart(chart: ScoreChart) -> str:
    return write_charts([chart])


class _ChartBuilder:
    def __init__(self, sent_id: str, n: int, lineno: int):
        self.sent_id = sent_id
        self.n = n
        self.lineno = lineno
        self.labels_c: tuple[str, ...] | None = None
        self.labels_d: tuple[str, ...] | None = None
        self.span = np.zeros((n + 1, n + 1))
        self.label: np.ndarray | None = None
        self.arc = np.zeros((n + 1, n + 1))
        self.dlabel: np.ndarray | None = None
        self.levels: list[int | None] = [None] * n

    def finish(self) -> ScoreChart:
        if self.labels_c is None:
            raise ChartError(f"line {self.lineno}: sentence {self.sent_id} has no CLABELS")
        if self.labels_d is None:
            raise ChartError(f"line {self.lineno}: sentence {self.sent_id} has no DLABELS")
        try:
            return ScoreChart(self.n, self.labels_c, self.labels_d, self.span, self.label,
                              self.arc, self.dlabel, tuple(self.levels), self.sent_id)
        except ChartError as exc:
            raise ChartError(f"line {self.lineno}: {exc}") from None


def read_charts(text: str) -> list[ScoreChart]:
    """Parse the text chart format; errors carry 1-based line numbers."""
    charts: list[ScoreChart] = []
    builder: _ChartBuilder | None = None

    def err(lineno: int, msg: str) -> ChartError:
        return ChartError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "#SENT":
            if builder is not None:
                charts.append(builder.finish())
            if len(parts) != 3:
                raise err(lineno, "#SENT expects <id> <n>")
            try:
                n = int(parts[2])
            except ValueError:
                raise err(lineno, f"bad sentence length {parts[2]!r}") from None
            if n < 1:
                raise err(lineno, "sentence length must be at least 1")
            builder = _ChartBuilder(parts[1], n, lineno)
            continue
        if builder is None:
            raise err(lineno, "missing #SENT header")
        b = builder
        if kind == "CLABELS":
            labels = tuple(parts[1:])
            if not labels or labels[0] != EMPTY_LABEL:
                raise err(lineno, f"CLABELS must start with {EMPTY_LABEL}")
            b.labels_c = labels
            b.label = np.zeros((b.n + 1, b.n + 1, len(labels)))
        elif kind == "DLABELS":
            if len(parts) < 2:
                raise err(lineno, "DLABELS must list at least one label")
            b.labels_d = tuple(parts[1:])
            b.dlabel = np.zeros((b.n + 1, b.n + 1, len(b.labels_d)))
        elif kind in ("SPAN", "ARC"):
            if len(parts) != 4:
                raise err(lineno, f"{kind} expects 3 fields")
            try:
                a, c = int(parts[1]), int(parts[2])
                score = float(parts[3])
            except ValueError:
                raise err(lineno, f"malformed {kind} entry") from None
            if kind == "SPAN":
                if not 0 <= a < c <= b.n:
                    raise err(lineno, f"span ({a}, {c}) out of range for n={b.n}")
                b.span[a, c] = score
            else:
                if not (0 <= a <= b.n and 1 <= c <= b.n):
                    raise err(lineno, f"arc ({a}, {c}) out of range for n={b.n}")
                if a == c:
                    raise err(lineno, "self-arc forbidden")
                b.arc[a, c] = score
        elif kind in ("LABEL", "DLABEL"):
            if len(parts) != 5:
                raise err(lineno, f"{kind} expects 4 fields")
            try:
                a, c, li = int(parts[1]), int(parts[2]), int(parts[3])
                score = float(parts[4])
            except ValueError:
                raise err(lineno, f"malformed {kind} entry") from None
            if kind == "LABEL":
                if b.label is None:
                    raise err(lineno, "LABEL before CLABELS")
                if not 0 <= a < c <= b.n:
                    raise err(lineno, f"span ({a}, {c}) out of range for n={b.n}")
                if not 0 <= li < b.label.shape[2]:
                    raise err(lineno, f"label index {li} out of range")
                b.label[a, c, li] = score
            else:
                if b.dlabel is None:
                    raise err(lineno, "DLABEL before DLABELS")
                if not (0 <= a <= b.n and 1 <= c <= b.n):
                    raise err(lineno, f"arc ({a}, {c}) out of range for n={b.n}")
                if a == c:
                    raise err(lineno, "self-arc forbidden")
                if not 0 <= li < b.dlabel.shape[2]:
                    raise err(lineno, f"label index {li} out of range")
                b.dlabel[a, c, li] = score
        elif kind == "HEADLVL":
            if len(parts) != 3:
                raise err(lineno, "HEADLVL expects 2 fields")
            try:
                m = int(parts[1])
            except ValueError:
                raise err(lineno, f"bad word index {parts[1]!r}") from None
            if not 1 <= m <= b.n:
                raise err(lineno, f"word index {m} out of range for n={b.n}")
            if parts[2] == "NONE":
                b.levels[m - 1] = None
            else:
                try:
                    lvl = int(parts[2])
                except ValueError:
                    raise err(lineno, f"bad level {parts[2]!r}") from None
                if not 1 <= lvl <= LEVEL_CAP:
                    raise err(lineno, f"level {lvl} outside 1..{LEVEL_CAP}")
                b.levels[m - 1] = lvl
        else:
            raise err(lineno, f"unknown record type {kind!r}")
    if builder is None:
        raise ChartError("line 1: missing #SENT header")
    charts.append(builder.finish())
    return charts


def read_chart(text: str) -> ScoreChart:
    """Parse a chart file expected to hold exactly one sentence."""
    charts = read_charts(text)
    if len(charts) != 1:
        raise ChartError(f"expected exactly one chart, found {len(charts)}")
    return charts[0]
