"""Score-chart construction, validation, oracle charts, and the file format."""

import numpy as np
import pytest

from jointparse.charts import (
    LEVEL_CAP,
    ChartError,
    ScoreChart,
    chart_build_count,
    oracle_chart,
    random_chart,
    read_chart,
    read_charts,
    write_chart,
    write_charts,
)
from jointparse.synthetic import DEFAULT_CLABELS, DEFAULT_DLABELS, random_joint_tree
from jointparse.trees import EMPTY_LABEL


def test_random_chart_is_deterministic():
    a = random_chart(5, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=9)
    b = random_chart(5, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=9)
    c = random_chart(5, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=10)
    assert np.array_equal(a.span_score, b.span_score)
    assert np.array_equal(a.label_score, b.label_score)
    assert a.head_level == b.head_level
    assert not np.array_equal(a.arc_score, c.arc_score)


def test_chart_validation():
    base = random_chart(3, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=0)
    with pytest.raises(ChartError):
        ScoreChart(0, base.labels_c, base.labels_d, base.span_score, base.label_score,
                   base.arc_score, base.dep_label_score, base.head_level)
    with pytest.raises(ChartError):  # missing reserved label
        ScoreChart(3, ("S", "NP"), base.labels_d, base.span_score, base.label_score,
                   base.arc_score, base.dep_label_score, base.head_level)
    with pytest.raises(ChartError):  # only the reserved label
        random_chart(3, (EMPTY_LABEL,), DEFAULT_DLABELS, seed=0)
    with pytest.raises(ChartError):  # wrong table shape
        ScoreChart(4, base.labels_c, base.labels_d, base.span_score, base.label_score,
                   base.arc_score, base.dep_label_score, base.head_level + (1,))
    bad_span = base.span_score.copy()
    bad_span[0, 2] = np.nan
    with pytest.raises(ChartError):
        ScoreChart(3, base.labels_c, base.labels_d, bad_span, base.label_score,
                   base.arc_score, base.dep_label_score, base.head_level)
    with pytest.raises(ChartError):  # level outside 1..cap
        base.with_head_levels((0, 1, 2))
    with pytest.raises(ChartError):
        base.with_head_levels((LEVEL_CAP + 1, 1, 2))


def test_head_scores_from_levels():
    chart = random_chart(3, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=1)
    chart = chart.with_head_levels((1, 4, None))
    s = chart.head_scores()
    assert s[0] == 0.0  # unused slot
    assert s[1] == 1.0 and s[2] == 0.25 and s[3] == 0.0


def test_build_counter_increments():
    before = chart_build_count()
    random_chart(2, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=4)
    assert chart_build_count() == before + 1


def test_oracle_chart_scores_gold_entries():
    rng = np.random.default_rng(7)
    jt = random_joint_tree(rng, 6)
    chart = oracle_chart(jt, margin=2.0)
    for node in jt.root.iter_nodes():
        li = chart.labels_c.index(node.label)
        assert chart.label_score[node.left, node.right, li] == 2.0
    assert chart.span_score.sum() == 0.0
    with pytest.raises(ChartError):
        oracle_chart(jt, margin=0.0)
    with pytest.raises(ChartError):  # gold label missing from the given set
        oracle_chart(jt, labels_c=(EMPTY_LABEL, "ZZZ"))


def test_chart_file_round_trip():
    charts = [random_chart(int(n), DEFAULT_CLABELS, DEFAULT_DLABELS, seed=int(n))
              for n in (1, 3, 6)]
    text = write_charts(charts)
    back = read_charts(text)
    assert len(back) == 3
    for a, b in zip(charts, back):
        assert (a.n, a.labels_c, a.labels_d, a.head_level, a.sent_id) == \
               (b.n, b.labels_c, b.labels_d, b.head_level, b.sent_id)
        for field in ("span_score", "label_score", "arc_score", "dep_label_score"):
            assert np.max(np.abs(getattr(a, field) - getattr(b, field))) <= 1e-9
    single = read_chart(write_chart(charts[0]))
    assert single.n == charts[0].n
    with pytest.raises(ChartError):
        read_chart(text)  # three charts where one was expected


@pytest.mark.parametrize(
    "bad, fragment",
    [
        ("SPAN 0 1 1.0", "line 1: missing #SENT header"),
        ("#SENT a", "#SENT expects"),
        ("#SENT a x", "bad sentence length"),
        ("#SENT a 0", "at least 1"),
        ("#SENT a 2\nCLABELS S NP", "must start with"),
        ("#SENT a 2\nCLABELS ∅ S\nDLABELS root\nSPAN 1 1 2.0", "out of range"),
        ("#SENT a 2\nCLABELS ∅ S\nDLABELS root\nARC 1 1 2.0", "line 4: self-arc"),
        ("#SENT a 2\nCLABELS ∅ S\nDLABELS root\nLABEL 0 2 9 1.0", "label index 9"),
        ("#SENT a 2\nCLABELS ∅ S\nDLABELS root\nHEADLVL 3 1", "word index 3"),
        ("#SENT a 2\nCLABELS ∅ S\nDLABELS root\nHEADLVL 1 99", "level 99"),
        ("#SENT a 2\nCLABELS ∅ S\nDLABELS root\nWHAT 1", "unknown record"),
        ("#SENT a 2\nDLABELS root", "no CLABELS"),
        ("#SENT a 2\nCLABELS ∅ S", "no DLABELS"),
    ],
)
def test_chart_file_errors(bad, fragment):
    with pytest.raises(ChartError, match="line \\d+"):
        try:
            read_charts(bad)
        except ChartError as exc:
            assert fragment in str(exc)
            raise
