"""Command-line front end: decode, bench, convert, eval.

All randomness flows from --seed; two runs with equal flags produce
identical non-timing output.  Exit status is 0 iff no errors occurred.
Decoded sentences get placeholder tokens w1..wn (charts carry no text);
dependency output leaves the POSTAG column as '_'.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .bench import ALGO_ORDER, BenchError, run_bench
from .charts import ChartError, read_charts
from .convert import ConvertError, const_to_dep, dep_to_const, read_head_rules
from .decoders import DecodeError, cky_decode, eisner_decode, h3n_decode, hpsg_decode, mst_decode
from .formats import FormatError, read_conll, read_ptb, write_conll, write_ptb
from .metrics import (
    DEFAULT_PUNCT_TAGS,
    MetricError,
    corpus_attachment,
    corpus_evalb,
    head_level_accuracy,
)
from .trees import TreeError, placeholder_sentence
from .synthetic import sentence_for_tree

_DECODERS = {
    "cky": cky_decode,
    "eisner": eisner_decode,
    "mst": mst_decode,
    "hpsg": hpsg_decode,
    "h3n": h3n_decode,
}
_CONST_ALGOS = frozenset({"cky", "hpsg", "h3n"})
_DEP_ALGOS = frozenset({"eisner", "mst", "hpsg", "h3n"})

_ERRORS = (ChartError, ConvertError, DecodeError, FormatError, MetricError, TreeError,
           BenchError, OSError)


def _cmd_decode(args) -> int:
    algo = args.algo
    if args.const is not None and algo not in _CONST_ALGOS:
        raise DecodeError(f"{algo} produces no constituent output")
    if args.dep is not None and algo not in _DEP_ALGOS:
        raise DecodeError(f"{algo} produces no dependency output")
    decode = _DECODERS[algo]
    charts = read_charts(Path(args.charts).read_text(encoding="utf-8"))
    const_pairs = []
    dep_pairs = []
    for chart in charts:
        result = decode(chart)
        print(f"{chart.sent_id}\t{result.score:.6f}")
        if args.const is not None:
            const_pairs.append((sentence_for_tree(result.const_tree), result.const_tree))
        if args.dep is not None:
            dep = result.dep_tree
            dep_pairs.append((placeholder_sentence(dep.n, tag="_"), dep))
    if args.const is not None:
        Path(args.const).write_text(write_ptb(const_pairs), encoding="utf-8")
    if args.dep is not None:
        Path(args.dep).write_text(write_conll(dep_pairs), encoding="utf-8")
    return 0


def _cmd_bench(args) -> int:
    report = run_bench(
        lengths=args.lengths,
        sentences=args.sentences,
        algos=args.algos,
        seed=args.seed,
        repeats=args.repeats,
        threads=args.threads,
        force=args.force,
    )
    print(report.table(), end="")
    return 0


def _cmd_convert(args) -> int:
    in_text = Path(args.infile).read_text(encoding="utf-8")
    if args.direction == "d2c":
        pairs = read_conll(in_text)
        out = write_ptb([(sent, dep_to_const(dep, sent)) for sent, dep in pairs])
    else:
        if args.rules is None:
            raise ConvertError("c2d requires a head-rule file (--rules)")
        rules = read_head_rules(Path(args.rules).read_text(encoding="utf-8"))
        pairs = read_ptb(in_text)
        out = write_conll([(sent, const_to_dep(tree, rules)) for sent, tree in pairs])
    Path(args.outfile).write_text(out, encoding="utf-8")
    return 0


def _parse_punct(spec: str) -> frozenset[str]:
    """Comma-separated tags; a backslash escapes a literal comma."""
    tags = [t.replace("\\,", ",") for t in re.split(r"(?<!\\),", spec)]
    return frozenset(tags)


def _paired(pred, gold, what: str):
    if len(pred) != len(gold):
        raise MetricError(
            f"{what}: predicted file has {len(pred)} sentences, gold has {len(gold)}"
        )
    return zip(pred, gold)


def _cmd_eval(args) -> int:
    pred_text = Path(args.pred).read_text(encoding="utf-8")
    gold_text = Path(args.gold).read_text(encoding="utf-8")
    if args.kind == "const":
        pred = read_ptb(pred_text)
        gold = read_ptb(gold_text)
        lp, lr, lf1 = corpus_evalb(
            [(pt, gt) for (_, pt), (_, gt) in _paired(pred, gold, "const")]
        )
        print(f"LP {lp:.2f}")
        print(f"LR {lr:.2f}")
        print(f"LF1 {lf1:.2f}")
    elif args.kind == "dep":
        punct = _parse_punct(args.punct) if args.punct is not None else DEFAULT_PUNCT_TAGS
        pred = read_conll(pred_text)
        gold = read_conll(gold_text)
        items = [
            (pd, gd, gs.pos_tags)
            for (_, pd), (gs, gd) in _paired(pred, gold, "dep")
        ]
        uas, las = corpus_attachment(items, punct)
        print(f"UAS {uas:.2f}")
        print(f"LAS {las:.2f}")
    else:  # headlvl — charts carry the per-word level fields
        pred_lvls = [lvl for c in read_charts(pred_text) for lvl in c.head_level]
        gold_lvls = [lvl for c in read_charts(gold_text) for lvl in c.head_level]
        acc = head_level_accuracy(pred_lvls, gold_lvls)
        print(f"HeadLvlAcc {acc:.2f}")
    return 0


def _int_list(spec: str) -> list[int]:
    try:
        return [int(part) for part in spec.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {spec!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jointparse",
        description="Joint constituency-dependency decoding over explicit score charts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decode", help="decode a chart file and write trees")
    p.add_argument("--algo", required=True, choices=sorted(_DECODERS))
    p.add_argument("charts", help="chart file to decode")
    p.add_argument("--const", help="write constituent trees here (bracketed)")
    p.add_argument("--dep", help="write dependency trees here (CoNLL)")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("bench", help="time decoders on synthetic charts")
    p.add_argument("--lengths", type=_int_list, required=True,
                   help="comma-separated exact sentence lengths")
    p.add_argument("--sentences", type=int, default=50, help="charts per bucket")
    p.add_argument("--algos", type=lambda s: s.split(","), default=["hpsg", "h3n"],
                   help=f"comma-separated algorithms from: {', '.join(ALGO_ORDER)}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--force", action="store_true",
                   help="run the slow joint decoder even on long buckets")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("convert", help="convert between treebank encodings")
    p.add_argument("direction", choices=["d2c", "c2d"])
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--rules", help="head-rule file (required for c2d)")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("eval", help="score predicted files against gold files")
    p.add_argument("kind", choices=["const", "dep", "headlvl"])
    p.add_argument("pred")
    p.add_argument("gold")
    p.add_argument("--punct", help="comma-separated POS tags to exclude (\\, for a literal comma)")
    p.set_defaults(func=_cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
