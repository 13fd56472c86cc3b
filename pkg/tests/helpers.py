"""Shared oracles and text generators for the test suite.

Oracles here are written independently of the library code paths they
check: occurrence listing uses bytes.find, minimizer selection scans every
window directly, and distinct-gram counting uses plain Python sets.
"""
from __future__ import annotations

import numpy as np


def find_oracle(haystack: bytes, pattern: bytes) -> list[int]:
    """Overlapping occurrence starts via bytes.find."""
    out = []
    x = haystack.find(pattern)
    while x >= 0:
        out.append(x)
        x = haystack.find(pattern, x + 1)
    return out


def brute_minimizers(data: bytes, w: int, p: int) -> list[int]:
    """Leftmost smallest p-mer of every window, by direct scanning."""
    n = len(data)
    if n < w:
        return []
    picked = set()
    for y in range(n - w + 1):
        best = None
        best_pos = None
        for x in range(y, y + w - p + 1):
            mer = data[x:x + p]
            if best is None or mer < best:
                best = mer
                best_pos = x
        picked.add(best_pos)
    return sorted(picked)


def distinct_grams_per_block(data: bytes, positions, q: int, b: int) -> dict[int, int]:
    """Distinct sampled q-grams per block id, with real byte keys."""
    seen: dict[int, set[bytes]] = {}
    for x in positions:
        x = int(x)
        seen.setdefault(x // b, set()).add(data[x:x + q])
    return {blk: len(grams) for blk, grams in seen.items()}


def random_text(rng: np.random.Generator, sigma: int, n: int) -> bytes:
    return rng.integers(0, sigma, n, dtype=np.uint8).tobytes()


_COMMON = ("the of and to in a is that for it as was with be by on not he i "
           "this are or his from at which but have an had they you were her "
           "all she there would their we him been has when who will more no "
           "if out so said what up its about into than them can only other "
           "new some could time these two may then do first any my now such "
           "like our over man me even most made after also did many before "
           "must through years where much your way well down").split()

_ONSETS = ("b bl br c ch cl cr d dr f fl fr g gl gr h j k l m n p pl pr qu r "
           "s sc sh sl sp st str t th tr v w wh").split()
_NUCLEI = "a e i o u ai ea ee oo ou".split()
_CODAS = ("b ck d ge k l ll m n nd ng nt p r rd rn s sh ss st t tch th ve x "
          "y").split()


def _synthetic_vocab(rng: np.random.Generator, size: int) -> list[str]:
    words = set()
    while len(words) < size:
        syllables = int(rng.integers(1, 4))
        parts = []
        for _ in range(syllables):
            parts.append(_ONSETS[rng.integers(0, len(_ONSETS))])
            parts.append(_NUCLEI[rng.integers(0, len(_NUCLEI))])
        parts.append(_CODAS[rng.integers(0, len(_CODAS))])
        words.add("".join(parts))
    return sorted(words)


def english_like(nbytes: int, seed: int = 0) -> bytes:
    """Deterministic prose-like filler with zipf-weighted word choice."""
    rng = np.random.default_rng(seed)
    vocab = _COMMON + _synthetic_vocab(rng, 8000)
    ranks = np.arange(1, len(vocab) + 1, dtype=np.float64)
    weights = 1.0 / ranks ** 1.1
    weights /= weights.sum()

    mean_word = sum(len(w) + 1 for w in vocab[:200]) / 200
    est_words = int(nbytes / mean_word * 1.15) + 16
    picks = rng.choice(len(vocab), size=est_words, p=weights)
    sentence_break = rng.random(est_words) < 1 / 14

    parts = []
    capitalize = True
    for idx, brk in zip(picks, sentence_break):
        word = vocab[idx]
        if capitalize:
            word = word.capitalize()
            capitalize = False
        if brk:
            parts.append(word + ".")
            capitalize = True
        else:
            parts.append(word)
    text = " ".join(parts).encode("ascii")
    return text[:nbytes]
