"""Choice of q-gram start positions at build time and query time.

Build side, by variant:

* STD samples every position in [0, n-q].
* SAM samples positions on the global grid x mod s == 0. The grid is
  global, not per block, so that for an occurrence at t the residue class
  (-t) mod s of pattern grams is always fully sampled.
* MSAM slides the minimizer window over the whole text and samples the
  start of the leftmost lexicographically smallest p-mer of each window.
  Windows cross block boundaries on purpose: the pattern is minimized with
  the same rule, and only windows that exist on both sides keep the two
  minimizer sets aligned. Each sampled gram belongs to the block holding
  its start position.

Query side, the plan lists the pattern grams to test and, for SAM, their
grouping into s residue classes; a block stays a candidate if some class
tests fully present.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PatternLengthError
from .hashing import gram_pairs_bulk
from .params import IndexParams, TextHandle, Variant, required_min_m


def _sliding_min(arr: np.ndarray, k: int) -> np.ndarray:
    """Minimum of every length-k window, via per-chunk prefix/suffix mins."""
    if k == 1:
        return arr
    n = arr.size
    nwin = n - k + 1
    nchunks = -(-n // k)
    pad = nchunks * k - n
    if pad:
        arr = np.concatenate([arr, np.full(pad, np.iinfo(arr.dtype).max, arr.dtype)])
    mat = arr.reshape(nchunks, k)
    prefix = np.minimum.accumulate(mat, axis=1).ravel()
    suffix = np.minimum.accumulate(mat[:, ::-1], axis=1)[:, ::-1].ravel()
    return np.minimum(suffix[:nwin], prefix[k - 1:k - 1 + nwin])


def minimizer_positions(data, w: int, p: int) -> np.ndarray:
    """Start positions of window minimizers, deduplicated and sorted.

    For every window start y in [0, len-w] the position of the leftmost
    lexicographically smallest p-mer inside [y, y+w-p] is selected. Gaps
    between consecutive selected positions never exceed w - p + 1. A range
    shorter than w yields an empty result.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if p >= w:
        raise ValueError("p must be < w")
    if isinstance(data, np.ndarray):
        arr = data
    else:
        arr = np.frombuffer(bytes(data), dtype=np.uint8)
    ln = arr.size
    if ln < w:
        return np.empty(0, dtype=np.int64)

    npmers = ln - p + 1
    cols = [arr[t:t + npmers] for t in range(p)]
    order = np.lexsort(tuple(reversed(cols)))
    differs = np.zeros(npmers, dtype=bool)
    for col in cols:
        sorted_col = col[order]
        differs[1:] |= sorted_col[1:] != sorted_col[:-1]
    ranks = np.empty(npmers, dtype=np.int64)
    ranks[order] = np.cumsum(differs)

    # Equal p-mers share a rank, so the position tiebreak picks the leftmost.
    combined = ranks * npmers + np.arange(npmers, dtype=np.int64)
    winners = _sliding_min(combined, w - p + 1)
    return np.unique(winners % npmers)


def build_positions(text: TextHandle, params: IndexParams) -> np.ndarray:
    """Sorted start positions whose q-grams are inserted at build time."""
    n, q = text.n, params.q
    if n < q:
        return np.empty(0, dtype=np.int64)
    if params.variant is Variant.STD:
        return np.arange(0, n - q + 1, dtype=np.int64)
    if params.variant is Variant.SAM:
        return np.arange(0, n - q + 1, params.s, dtype=np.int64)
    pos = minimizer_positions(text.view, params.w, params.p)
    return pos[pos + q <= n]


@dataclass(frozen=True)
class QueryPlan:
    """Pattern grams to test, pre-hashed, with SAM residue grouping.

    ``pairs`` holds one (g1, g2) per plan gram; ``classes`` indexes into
    it. STD and MSAM use a single class holding every gram; SAM class o
    holds the grams whose pattern offset is congruent to o mod s.
    """

    variant: Variant
    m: int
    pairs: tuple[tuple[int, int], ...]
    classes: tuple[tuple[int, ...], ...]


def query_plan(pattern: bytes, params: IndexParams) -> QueryPlan:
    """Variant-specific plan for ``pattern``; rejects out-of-range lengths."""
    m = len(pattern)
    min_m = required_min_m(params)
    if m < min_m:
        raise PatternLengthError(
            f"pattern length {m} is below the required minimum {min_m}",
            required=min_m)
    if m > params.b:
        raise PatternLengthError(
            f"pattern length {m} exceeds the block size {params.b}",
            limit=params.b)

    q = params.q
    arr = np.frombuffer(pattern, dtype=np.uint8)
    if params.variant is Variant.MSAM:
        pos = minimizer_positions(arr, params.w, params.p)
        pos = pos[pos + q <= m]
    else:
        pos = np.arange(0, m - q + 1, dtype=np.int64)

    g1, g2 = gram_pairs_bulk(arr, pos, q, params.seed)
    pairs = tuple(zip(g1.tolist(), g2.tolist()))

    if params.variant is Variant.SAM:
        s = params.s
        classes = tuple(tuple(range(o, m - q + 1, s)) for o in range(s))
    else:
        classes = (tuple(range(len(pairs))),)
    return QueryPlan(variant=params.variant, m=m, pairs=pairs, classes=classes)
