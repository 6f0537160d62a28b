"""Acceptance suite: eight checkable criteria, one PASS/FAIL line each.

Each criterion states its tolerance inline.  Exhaustive-search references
and decoders share the same canonical structure scorers, so score
comparisons are exact (==) unless a looser tolerance is called out.
"""

import time

import numpy as np

from conftest import record_criterion

from jointparse.bench import run_bench
from jointparse.charts import oracle_chart, random_chart, read_charts, write_charts
from jointparse.convert import dep_to_const, joint_from_parallel, pseudo_tree_to_dep
from jointparse.decoders import (
    brute_force_arborescence,
    brute_force_const,
    brute_force_joint,
    brute_force_projective,
    cky_decode,
    eisner_decode,
    h3n_decode,
    hpsg_decode,
    mst_decode,
    score_const_tree,
    score_dep_tree,
    score_joint_tree,
)
from jointparse.decoders.brute import joint_skeletons
from jointparse.formats import read_conll, read_ptb, write_conll, write_ptb
from jointparse.heads import check_head_properties, gold_head_levels, head_score
from jointparse.metrics import (
    attachment_scores,
    corpus_attachment,
    corpus_evalb,
    evalb,
    head_level_accuracy,
)
from jointparse.synthetic import (
    DEFAULT_CLABELS,
    DEFAULT_DLABELS,
    DEFAULT_TAGS,
    random_const_tree,
    random_joint_tree,
    random_nonprojective_dep_tree,
    random_projective_dep_tree,
    random_sentence,
    sentence_for_tree,
)
from jointparse.trees import (
    ConstTree,
    DepTree,
    JointNode,
    JointTree,
    Sentence,
    const_part,
    debinarize,
    expand_unary,
    induced_dep_tree,
    validate_const_tree,
)

RESCORE_TOL = 1e-9


@record_criterion(1, "decoders match exhaustive search (exact scores)")
def test_criterion_1_exhaustive_parity():
    start = time.monotonic()
    families = [
        ("cky", cky_decode, brute_force_const, 6,
         lambda r, c: score_const_tree(r.binary_tree, c)),
        ("eisner", eisner_decode, brute_force_projective, 7,
         lambda r, c: score_dep_tree(r.dep_tree, c)),
        ("mst", mst_decode, brute_force_arborescence, 6,
         lambda r, c: score_dep_tree(r.dep_tree, c)),
        ("hpsg", hpsg_decode, brute_force_joint, 5,
         lambda r, c: score_joint_tree(r.joint_tree, c)),
    ]
    checked = 0
    worst_gap = 0.0
    for fam, (name, decode, brute, max_n, rescore) in enumerate(families):
        for idx in range(200):
            n = (idx % max_n) + 1
            chart = random_chart(n, DEFAULT_CLABELS, DEFAULT_DLABELS,
                                 seed=100_000 * (fam + 1) + idx)
            fast = decode(chart)
            slow = brute(chart)
            assert fast.score == slow.score, (
                f"{name} n={n} idx={idx}: {fast.score!r} != {slow.score!r}"
            )
            for res in (fast, slow):
                gap = abs(rescore(res, chart) - res.score)
                worst_gap = max(worst_gap, gap)
                assert gap <= RESCORE_TOL
            checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 300.0, f"took {elapsed:.0f}s, limit 300s"
    return f"{checked} charts over 4 families, worst rescore gap {worst_gap:.1e}, {elapsed:.1f}s"


@record_criterion(2, "oracle charts decode back to gold (all metrics 100.00)")
def test_criterion_2_gold_recovery():
    start = time.monotonic()
    rng = np.random.default_rng(20260814)
    const_pairs = []
    dep_items = []
    pred_levels: list[int | None] = []
    gold_levels: list[int | None] = []
    for case in range(500):
        gold = random_joint_tree(rng, int(rng.integers(1, 11)))
        chart = oracle_chart(gold, margin=1.0)
        for decode in (hpsg_decode, h3n_decode):
            result = decode(chart)
            assert result.joint_tree == gold, f"case {case}: structure differs"
        result = h3n_decode(chart)
        gold_const = expand_unary(debinarize(const_part(gold)))
        const_pairs.append((result.const_tree, gold_const))
        tags = ("X",) * gold.n
        dep_items.append((result.dep_tree, induced_dep_tree(gold), tags))
        pred_levels.extend(gold_head_levels(result.joint_tree))
        gold_levels.extend(gold_head_levels(gold))
    lf1 = corpus_evalb(const_pairs)[2]
    uas, las = corpus_attachment(dep_items)
    hacc = head_level_accuracy(pred_levels, gold_levels)
    assert f"{lf1:.2f}" == "100.00"
    assert f"{uas:.2f}" == "100.00" and f"{las:.2f}" == "100.00"
    assert f"{hacc:.2f}" == "100.00"
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"took {elapsed:.0f}s, limit 60s"
    return f"500 trees x 2 decoders, LF1/UAS/LAS/LvlAcc all 100.00, {elapsed:.1f}s"


@record_criterion(3, "level-blind joint score is dominated; gold levels close the gap")
def test_criterion_3_dominance_and_consistency():
    rng = np.random.default_rng(777)
    for idx in range(200):
        n = int(rng.integers(1, 6))
        chart = random_chart(n, DEFAULT_CLABELS, DEFAULT_DLABELS, seed=3000 + idx)
        full = hpsg_decode(chart)
        fast = h3n_decode(chart)
        assert fast.score <= full.score, f"chart {idx}: dominance violated"
        aligned = chart.with_head_levels(gold_head_levels(full.joint_tree))
        fast2 = h3n_decode(aligned)
        full2 = hpsg_decode(aligned)
        assert full2.score == full.score, f"chart {idx}: level substitution moved the optimum"
        assert fast2.score == full2.score, f"chart {idx}: {fast2.score!r} != {full2.score!r}"
    return "200 charts (n<=5): h3n <= hpsg everywhere; equality after gold-level substitution"


@record_criterion(4, "derived head scores satisfy all three head-score properties")
def test_criterion_4_head_properties():
    total = 0
    for n in range(1, 7):
        for skeleton in joint_skeletons(n):
            tree = JointTree(skeleton, ("x",) * n)
            scores = [head_score(lvl) for lvl in gold_head_levels(tree)]
            violations = check_head_properties(scores, tree)
            assert violations == [], f"n={n}: {violations[:3]}"
            total += 1
    # constructed counterexamples must be flagged
    bad_tree = JointTree(
        JointNode("S", 0, 2, 1, (JointNode("A", 0, 1, 1), JointNode("B", 1, 2, 2))),
        ("root", "x"),
    )
    tie = check_head_properties([0.5, 0.5], bad_tree)
    assert any(v.prop == 1 for v in tie), "head-score tie not flagged"
    inverted = check_head_properties([0.2, 0.9], bad_tree)
    assert any(v.prop in (1, 3) for v in inverted), "inner-outscores-outer not flagged"
    return f"{total} head-annotated structures with n<=6, zero violations"


@record_criterion(5, "decode-time scaling matches the complexity classes")
def test_criterion_5_complexity_scaling():
    start = time.monotonic()
    report = run_bench(lengths=[27, 50, 100, 127, 200], sentences=50,
                       algos=("hpsg", "h3n"), seed=20260814, repeats=5, threads=1)
    t = {(r.length, r.algo): r.time_s for r in report.rows}
    h3n_ratio = t[(200, "h3n")] / t[(100, "h3n")]
    hpsg_ratio = t[(100, "hpsg")] / t[(50, "hpsg")]
    speedup_127 = t[(127, "hpsg")] / t[(127, "h3n")]
    speedup_27 = t[(27, "hpsg")] / t[(27, "h3n")]
    assert (200, "hpsg") not in t, "length-200 bucket should auto-skip the n^5 decoder"
    assert 4.0 <= h3n_ratio <= 16.0, f"h3n 200/100 ratio {h3n_ratio:.2f} outside [4, 16]"
    assert speedup_127 >= 5.0, f"speedup at 127 is {speedup_127:.2f}, need >= 5"
    assert speedup_127 > speedup_27, (
        f"speedup must widen with length: {speedup_127:.2f} vs {speedup_27:.2f}"
    )
    assert hpsg_ratio >= 16.0, f"hpsg 100/50 ratio {hpsg_ratio:.2f}, need >= 16"
    elapsed = time.monotonic() - start
    assert elapsed < 1800.0, f"took {elapsed:.0f}s, limit 1800s"
    return (
        f"h3n 200/100 = {h3n_ratio:.2f} in [4,16]; hpsg 100/50 = {hpsg_ratio:.2f} >= 16; "
        f"speedup {speedup_27:.2f}x@27 -> {speedup_127:.2f}x@127; {elapsed:.0f}s"
    )


@record_criterion(6, "treebank conversions invert and keep spans contiguous")
def test_criterion_6_conversions():
    rng = np.random.default_rng(606)
    for case in range(500):
        n = int(rng.integers(1, 11))
        dep = random_projective_dep_tree(rng, n)
        sent = Sentence(tuple(f"t{i}" for i in range(n)),
                        tuple(DEFAULT_TAGS[int(v)] for v in rng.integers(0, len(DEFAULT_TAGS), n)))
        tree = dep_to_const(dep, sent)
        assert pseudo_tree_to_dep(tree, sent) == dep, f"projective case {case}"
    for case in range(200):
        n = int(rng.integers(3, 12))
        dep = random_nonprojective_dep_tree(rng, n)
        sent = Sentence(tuple(f"t{i}" for i in range(n)), ("X",) * n)
        tree = dep_to_const(dep, sent)
        validate_const_tree(tree, n)
        leaves = [nd.left for nd in tree.iter_nodes() if nd.is_leaf]
        assert sorted(leaves) == leaves == list(range(n)), f"non-projective case {case}"
        for nd in tree.iter_nodes():
            covered = sorted(x.left for x in nd.iter_nodes() if x.is_leaf)
            assert covered == list(range(nd.left, nd.right)), f"gap inside span {nd.span}"
    for case in range(200):
        gold = random_joint_tree(rng, int(rng.integers(1, 11)))
        const = expand_unary(debinarize(const_part(gold)))
        assert joint_from_parallel(const, induced_dep_tree(gold)) == gold, f"joint case {case}"
    return "500 projective inversions, 200 contiguity checks, 200 joint reassemblies"


@record_criterion(7, "file formats round-trip (charts within 1e-9)")
def test_criterion_7_io_round_trips():
    rng = np.random.default_rng(707)
    ptb_corpus = []
    conll_corpus = []
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        tree = expand_unary(debinarize(random_const_tree(rng, n)))
        ptb_corpus.append((sentence_for_tree(tree), tree))
        m = int(rng.integers(1, 13))
        conll_corpus.append((random_sentence(rng, m), random_projective_dep_tree(rng, m)))
    ptb_text = write_ptb(ptb_corpus)
    assert read_ptb(ptb_text) == ptb_corpus
    assert write_ptb(read_ptb(ptb_text)) == ptb_text
    conll_text = write_conll(conll_corpus)
    assert read_conll(conll_text) == conll_corpus
    assert write_conll(read_conll(conll_text)) == conll_text

    charts = [random_chart(int(rng.integers(1, 9)), DEFAULT_CLABELS, DEFAULT_DLABELS,
                           seed=7000 + k, sent_id=str(k)) for k in range(30)]
    back = read_charts(write_charts(charts))
    worst = 0.0
    for a, b in zip(charts, back):
        assert (a.n, a.labels_c, a.labels_d, a.head_level) == (b.n, b.labels_c, b.labels_d, b.head_level)
        for field in ("span_score", "label_score", "arc_score", "dep_label_score"):
            worst = max(worst, float(np.max(np.abs(getattr(a, field) - getattr(b, field)))))
    assert worst <= 1e-9, f"chart round-trip error {worst:.2e}"
    return f"1000+1000 sentences exact; 30 charts, worst entry error {worst:.1e} <= 1e-9"


@record_criterion(8, "metric arithmetic matches the hand-computed examples")
def test_criterion_8_metric_arithmetic():
    def l(label, i):
        return ConstTree(label, i, i + 1)

    gold_tree = ConstTree("S", 0, 4, (
        ConstTree("NP", 0, 2, (l("D", 0), l("N", 1))),
        ConstTree("VP+X", 2, 4, (l("V", 2), l("N", 3))),
    ))
    pred_tree = ConstTree("S", 0, 4, (
        ConstTree("NP", 0, 2, (l("D", 0), l("N", 1))),
        ConstTree("ADJP", 2, 4, (l("V", 2), l("N", 3))),
    ))
    lp, lr, lf1 = evalb(pred_tree, gold_tree)
    assert (f"{lp:.2f}", f"{lr:.2f}", f"{lf1:.2f}") == ("66.67", "50.00", "57.14")

    gold_dep = DepTree((2, 0, 2, 2, 2), ("nsubj", "root", "obj", "nmod", "punct"))
    pred_dep = DepTree((2, 0, 2, 5, 1), ("nsubj", "root", "amod", "nmod", "punct"))
    uas, las = attachment_scores(pred_dep, gold_dep, ("NN", "VB", "NN", "NN", "."))
    assert (f"{uas:.2f}", f"{las:.2f}") == ("75.00", "50.00")

    assert f"{head_level_accuracy([None, None, None], [1, 1, 1]):.2f}" == "0.00"
    return "bracket 66.67/50.00/57.14; attachment 75.00/50.00; level-class 0.00"
