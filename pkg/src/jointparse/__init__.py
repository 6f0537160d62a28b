"""Joint constituent/dependency decoding over explicit score charts."""

from .bench import BenchError, BenchReport, BenchRow, run_bench
from .charts import (
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
from .convert import (
    ConvertError,
    const_to_dep,
    dep_to_const,
    joint_from_parallel,
    pseudo_tree_to_dep,
    read_head_rules,
    write_head_rules,
)
from .decoders import (
    DecodeError,
    DecodeResult,
    DecodeStats,
    brute_force_arborescence,
    brute_force_const,
    brute_force_dep,
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
from .formats import FormatError, read_conll, read_ptb, write_conll, write_ptb
from .heads import HeadPropertyViolation, check_head_properties, gold_head_levels, head_score, span_levels
from .metrics import (
    DEFAULT_PUNCT_TAGS,
    MetricError,
    attachment_scores,
    corpus_attachment,
    corpus_evalb,
    evalb,
    head_level_accuracy,
    span_head_accuracy,
)
from .trees import (
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

__version__ = "0.1.0"
