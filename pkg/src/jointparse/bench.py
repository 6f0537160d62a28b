"""Decoder timing harness over synthetic charts.

Buckets are exact sentence lengths.  For each bucket the harness builds
seeded random charts up front, runs one untimed warmup decode per
algorithm (absorbing any one-time compilation), then times the decode
calls only — a chart-construction counter is checked around every timed
region, so chart generation and serialization can never leak into the
numbers, and the cyclic garbage collector is collected once and disabled
while the clock runs (as timeit does).  Each measurement repeats (default
5) and reports the mean; scores must be identical across repeats or the
run aborts.

The report mirrors the usual decoder-comparison table: one row per
(length, algorithm) with complexity class, total time over the bucket,
sentences per second, and the speedup relative to the slow joint decoder
at the same length.  That decoder is skipped (with a notice) above a
length cutoff unless forced, because its n⁵ growth makes long buckets
take hours.
"""

from __future__ import annotations

import gc
import statistics
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .charts import ScoreChart, chart_build_count, random_chart
from .decoders import cky_decode, eisner_decode, h3n_decode, hpsg_decode, mst_decode
from .synthetic import DEFAULT_CLABELS, DEFAULT_DLABELS

__all__ = ["BenchError", "BenchRow", "BenchReport", "run_bench", "ALGO_ORDER", "HPSG_CUTOFF"]


class BenchError(ValueError):
    """Raised for invalid benchmark configuration."""


ALGOS: dict[str, tuple[Callable[[ScoreChart], object], str]] = {
    "cky": (cky_decode, "O(n³)"),
    "eisner": (eisner_decode, "O(n³)"),
    "mst": (mst_decode, "O(n³)"),
    "hpsg": (hpsg_decode, "O(n⁵)"),
    "h3n": (h3n_decode, "O(n³)"),
}
ALGO_ORDER = tuple(ALGOS)
HPSG_CUTOFF = 150


@dataclass(frozen=True)
class BenchRow:
    length: int
    algo: str
    complexity: str
    time_s: float  # mean over repeats of total decode time for the bucket
    speed: float  # sentences per second
    speedup: float | None  # slow-joint-decoder time / this algorithm's time
    scores: tuple[float, ...]  # per-sentence scores (identical across repeats)


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    notices: tuple[str, ...]

    def table(self) -> str:
        header = ("Length", "Algo", "Comp.", "Time", "Speed", "Speedup")
        body = [
            (
                str(r.length),
                r.algo,
                r.complexity,
                f"{r.time_s:.3f}s",
                f"{r.speed:.1f}",
                "-" if r.speedup is None else f"{r.speedup:.2f}x",
            )
            for r in self.rows
        ]
        widths = [max(len(h), *(len(row[c]) for row in body)) if body else len(h)
                  for c, h in enumerate(header)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        for row in body:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        lines.extend(self.notices)
        return "\n".join(lines) + "\n"


def _bucket_charts(length: int, count: int, seed: int) -> list[ScoreChart]:
    charts = []
    for idx in range(count):
        chart_seed = int(np.random.SeedSequence([seed, length, idx]).generate_state(1)[0])
        charts.append(
            random_chart(length, DEFAULT_CLABELS, DEFAULT_DLABELS, chart_seed,
                         sent_id=f"{length}.{idx}")
        )
    return charts


def _timed(
    decode: Callable[[ScoreChart], object],
    charts: Sequence[ScoreChart],
    repeats: int,
    pool: ThreadPoolExecutor | None,
) -> tuple[float, tuple[float, ...]]:
    decode(charts[0])  # warmup, untimed
    before = chart_build_count()
    times = []
    score_runs = []
    # Collect garbage once, then keep the collector off while the clock runs
    # (as timeit does), so pauses triggered by unrelated live objects don't
    # land inside the measurement.
    gc_was_enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(repeats):
            start = time.perf_counter()
            if pool is None:
                results = [decode(c) for c in charts]
            else:
                results = list(pool.map(decode, charts))
            times.append(time.perf_counter() - start)
            score_runs.append(tuple(r.score for r in results))
    finally:
        if gc_was_enabled:
            gc.enable()
    if chart_build_count() != before:
        raise RuntimeError("chart construction occurred inside a timed region")
    first = score_runs[0]
    for run in score_runs[1:]:
        if run != first:
            raise RuntimeError("scores changed across benchmark repeats")
    return statistics.fmean(times), first


def run_bench(
    lengths: Sequence[int],
    sentences: int = 50,
    algos: Sequence[str] = ("hpsg", "h3n"),
    seed: int = 0,
    repeats: int = 5,
    threads: int = 1,
    force: bool = False,
) -> BenchReport:
    """Time each algorithm over seeded random-chart buckets of exact lengths."""
    for length in lengths:
        if length < 1:
            raise BenchError(f"bucket length must be positive, got {length}")
    if sentences < 1:
        raise BenchError("need at least one sentence per bucket")
    if repeats < 1:
        raise BenchError("need at least one repeat")
    if threads < 1:
        raise BenchError("need at least one thread")
    for algo in algos:
        if algo not in ALGOS:
            raise BenchError(f"unknown algorithm {algo!r} (choose from {', '.join(ALGOS)})")

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    rows: list[BenchRow] = []
    notices: list[str] = []
    try:
        for length in lengths:
            charts = _bucket_charts(length, sentences, seed)
            bucket: list[BenchRow] = []
            hpsg_time: float | None = None
            for algo in algos:
                if algo == "hpsg" and length > HPSG_CUTOFF and not force:
                    notices.append(
                        f"note: hpsg skipped at length {length} (> {HPSG_CUTOFF}); "
                        "use force to include it"
                    )
                    continue
                decode, comp = ALGOS[algo]
                mean_time, scores = _timed(decode, charts, repeats, pool)
                bucket.append(BenchRow(length, algo, comp, mean_time, sentences / mean_time,
                                       None, scores))
                if algo == "hpsg":
                    hpsg_time = mean_time
            for row in bucket:
                speedup = None if hpsg_time is None else hpsg_time / row.time_s
                rows.append(BenchRow(row.length, row.algo, row.complexity, row.time_s,
                                     row.speed, speedup, row.scores))
    finally:
        if pool is not None:
            pool.shutdown()
    return BenchReport(tuple(rows), tuple(notices))
