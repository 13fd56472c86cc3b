"""Exact string matchers used to scan candidate blocks.

NAIVE checks every alignment with a slice compare and is the reference
the others are tested against. BITPARALLEL is a shift-or automaton and
only accepts patterns up to the 64-bit word width. COMPARISON is a
Horspool skip search with no length limit. All three return the same
sorted, duplicate-free positions.
"""
from __future__ import annotations

from enum import Enum

WORD_BITS = 64


class VerifierKind(Enum):
    NAIVE = "naive"
    BITPARALLEL = "bitparallel"
    COMPARISON = "comparison"


def route_verifier(m: int) -> VerifierKind:
    """Default engine for a pattern of length m."""
    return VerifierKind.BITPARALLEL if m <= WORD_BITS else VerifierKind.COMPARISON


def resolve_kind(kind) -> VerifierKind:
    if isinstance(kind, VerifierKind):
        return kind
    try:
        return VerifierKind(str(kind).lower())
    except ValueError:
        raise ValueError(f"unknown verifier {kind!r}") from None


def find_all(kind, haystack: bytes, pattern: bytes) -> list[int]:
    """All start positions of ``pattern`` in ``haystack``, ascending."""
    if len(pattern) < 1:
        raise ValueError("pattern must not be empty")
    kind = resolve_kind(kind)
    if kind is VerifierKind.NAIVE:
        return _find_naive(haystack, pattern)
    if kind is VerifierKind.BITPARALLEL:
        return _find_shift_or(haystack, pattern)
    return _find_horspool(haystack, pattern)


def _find_naive(haystack: bytes, pattern: bytes) -> list[int]:
    m = len(pattern)
    out = []
    for x in range(len(haystack) - m + 1):
        if haystack[x:x + m] == pattern:
            out.append(x)
    return out


def _find_shift_or(haystack: bytes, pattern: bytes) -> list[int]:
    m = len(pattern)
    if m > WORD_BITS:
        raise ValueError(
            f"bit-parallel verifier handles m <= {WORD_BITS}, got {m}")
    all_ones = (1 << m) - 1
    masks = {}
    for i, byte in enumerate(pattern):
        masks[byte] = masks.get(byte, all_ones) & ~(1 << i)
    hit_bit = 1 << (m - 1)
    state = all_ones
    out = []
    for x, byte in enumerate(haystack):
        state = ((state << 1) | masks.get(byte, all_ones)) & all_ones
        if not state & hit_bit:
            out.append(x - m + 1)
    return out


def _find_horspool(haystack: bytes, pattern: bytes) -> list[int]:
    m = len(pattern)
    n = len(haystack)
    if m > n:
        return []
    shift = [m] * 256
    for i in range(m - 1):
        shift[pattern[i]] = m - 1 - i
    out = []
    x = 0
    last = n - m
    while x <= last:
        if haystack[x:x + m] == pattern:
            out.append(x)
        x += shift[haystack[x + m - 1]]
    return out
