"""Compiled chart-fill loops for the dynamic-programming decoders.

These kernels only *select* structures (values + backpointers); reported
scores always come from re-scoring the backtracked structure with the
canonical scorers, so floating-point summation order here never leaks into
results.

Tie policy throughout: strict improvement only, with ascending loop order,
so the smallest split point / modifier / head index wins ties.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NEG = -np.inf


@njit(cache=True, nogil=True)
def label_max_fill(n, label_score, empty_idx):
    """Per-cell best label over all labels and over non-reserved labels.

    Only upper-triangle cells (i < j) are filled; ties resolve to the
    lowest label index.
    """
    nl = label_score.shape[2]
    lm_all = np.zeros((n + 1, n + 1))
    la_all = np.zeros((n + 1, n + 1), dtype=np.int64)
    lm_real = np.zeros((n + 1, n + 1))
    la_real = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            ba = NEG
            bai = 0
            br = NEG
            bri = 0
            for l in range(nl):
                v = label_score[i, j, l]
                if v > ba:
                    ba = v
                    bai = l
                if l != empty_idx and v > br:
                    br = v
                    bri = l
            lm_all[i, j] = ba
            la_all[i, j] = bai
            lm_real[i, j] = br
            la_real[i, j] = bri
    return lm_all, la_all, lm_real, la_real


@njit(cache=True, nogil=True)
def arc_aug_fill(arc, dep_label_score):
    """Arc score plus best relation score, per governor/modifier pair."""
    nn = arc.shape[0]
    nl = dep_label_score.shape[2]
    out = np.empty((nn, nn))
    for h in range(nn):
        for m in range(nn):
            b = dep_label_score[h, m, 0]
            for l in range(1, nl):
                if dep_label_score[h, m, l] > b:
                    b = dep_label_score[h, m, l]
            out[h, m] = arc[h, m] + b
    return out


@njit(cache=True, nogil=True)
def cky_fill(n, span, lmax_all):
    """Label-factored binary-tree chart.

    bs[i, j] holds the best subtree value over span (i, j) excluding that
    span's own label and span scores (both are charged by the parent; the
    root's label is added by the caller, its span score never enters).
    """
    bs = np.zeros((n + 1, n + 1))
    bk = np.full((n + 1, n + 1), -1, dtype=np.int64)
    splits = 0
    for w in range(2, n + 1):
        for i in range(0, n - w + 1):
            j = i + w
            best = NEG
            bestk = -1
            for k in range(i + 1, j):
                v = (bs[i, k] + lmax_all[i, k] + span[i, k]
                     + bs[k, j] + lmax_all[k, j] + span[k, j])
                splits += 1
                if v > best:
                    best = v
                    bestk = k
            bs[i, j] = best
            bk[i, j] = bestk
    return bs, bk, splits


@njit(cache=True, nogil=True)
def h3n_fill(n, span, lmax_all, lmax_real, arcaug, shead):
    """Cubic-time joint chart with greedy head selection.

    Each cell keeps a single canonical head hs[i, j]; at a split the child
    whose head scores strictly higher (per-word head score, derived from
    span levels) becomes the head side, ties going to the left child.  The
    head-side child's label is drawn from non-reserved labels, the modifier
    side may take the reserved dummy label.  bs excludes the cell's own
    label and span scores, as in cky_fill.
    """
    bs = np.zeros((n + 1, n + 1))
    hs = np.zeros((n + 1, n + 1), dtype=np.int64)
    bk = np.full((n + 1, n + 1), -1, dtype=np.int64)
    for i in range(n):
        hs[i, i + 1] = i + 1
    splits = 0
    for w in range(2, n + 1):
        for i in range(0, n - w + 1):
            j = i + w
            best = NEG
            bestk = -1
            besth = -1
            for k in range(i + 1, j):
                hl = hs[i, k]
                hr = hs[k, j]
                if shead[hr] > shead[hl]:
                    v = (bs[i, k] + lmax_all[i, k] + bs[k, j] + lmax_real[k, j]
                         + arcaug[hr, hl] + span[i, k] + span[k, j])
                    h = hr
                else:
                    v = (bs[i, k] + lmax_real[i, k] + bs[k, j] + lmax_all[k, j]
                         + arcaug[hl, hr] + span[i, k] + span[k, j])
                    h = hl
                splits += 1
                if v > best:
                    best = v
                    bestk = k
                    besth = h
            bs[i, j] = best
            bk[i, j] = bestk
            hs[i, j] = besth
    return bs, hs, bk, splits


@njit(cache=True, nogil=True)
def hpsg_fill(n, span, lmax_all, lmax_real, arcaug):
    """Head-indexed joint chart (quintic time).

    bs[i, j, h] is the best value of a subtree over (i, j) headed by word h,
    excluding the cell's own label and span scores.  At each split the
    head-side child keeps h and takes a non-reserved label; the modifier
    side maximizes over its own head m (the arc h -> m is charged here) and
    may take the dummy label.  bk stores the split, bm the modifier head.
    """
    bs = np.full((n + 1, n + 1, n + 1), NEG)
    bk = np.full((n + 1, n + 1, n + 1), -1, dtype=np.int64)
    bm = np.full((n + 1, n + 1, n + 1), -1, dtype=np.int64)
    for i in range(n):
        bs[i, i + 1, i + 1] = 0.0
    pairs = 0
    for w in range(2, n + 1):
        for i in range(0, n - w + 1):
            j = i + w
            for k in range(i + 1, j):
                spl = span[i, k] + span[k, j]
                baseL = lmax_real[i, k] + lmax_all[k, j] + spl
                for h in range(i + 1, k + 1):
                    hb = bs[i, k, h] + baseL
                    inner = NEG
                    bestm = -1
                    for m in range(k + 1, j + 1):
                        cand = bs[k, j, m] + arcaug[h, m]
                        if cand > inner:
                            inner = cand
                            bestm = m
                    pairs += j - k
                    v = hb + inner
                    if v > bs[i, j, h]:
                        bs[i, j, h] = v
                        bk[i, j, h] = k
                        bm[i, j, h] = bestm
                baseR = lmax_real[k, j] + lmax_all[i, k] + spl
                for h in range(k + 1, j + 1):
                    hb = bs[k, j, h] + baseR
                    inner = NEG
                    bestm = -1
                    for m in range(i + 1, k + 1):
                        cand = bs[i, k, m] + arcaug[h, m]
                        if cand > inner:
                            inner = cand
                            bestm = m
                    pairs += k - i
                    v = hb + inner
                    if v > bs[i, j, h]:
                        bs[i, j, h] = v
                        bk[i, j, h] = k
                        bm[i, j, h] = bestm
    return bs, bk, bm, pairs


@njit(cache=True, nogil=True)
def eisner_fill(n, arc):
    """First-order projective dependency chart over words 1..n.

    ir/il are incomplete spans (arc s -> t resp. t -> s pending), cr/cl
    complete spans headed at the left resp. right end.  The artificial root
    enters only at the end: the best attachment point r maximizes
    cl[1, r] + cr[r, n] + arc[0, r], which enforces exactly one root child.
    """
    ir = np.full((n + 1, n + 1), NEG)
    il = np.full((n + 1, n + 1), NEG)
    cr = np.zeros((n + 1, n + 1))
    cl = np.zeros((n + 1, n + 1))
    kir = np.full((n + 1, n + 1), -1, dtype=np.int64)
    kcr = np.full((n + 1, n + 1), -1, dtype=np.int64)
    kcl = np.full((n + 1, n + 1), -1, dtype=np.int64)
    splits = 0
    for w in range(1, n):
        for s in range(1, n - w + 1):
            t = s + w
            bi = NEG
            bik = -1
            for k in range(s, t):
                v = cr[s, k] + cl[k + 1, t]
                splits += 1
                if v > bi:
                    bi = v
                    bik = k
            ir[s, t] = bi + arc[s, t]
            il[s, t] = bi + arc[t, s]
            kir[s, t] = bik
            bc = NEG
            bck = -1
            for k in range(s + 1, t + 1):
                v = ir[s, k] + cr[k, t]
                splits += 1
                if v > bc:
                    bc = v
                    bck = k
            cr[s, t] = bc
            kcr[s, t] = bck
            bc = NEG
            bck = -1
            for k in range(s, t):
                v = cl[s, k] + il[k, t]
                splits += 1
                if v > bc:
                    bc = v
                    bck = k
            cl[s, t] = bc
            kcl[s, t] = bck
    best = NEG
    root = -1
    for r in range(1, n + 1):
        v = cl[1, r] + cr[r, n] + arc[0, r]
        if v > best:
            best = v
            root = r
    return kir, kcr, kcl, root, splits
