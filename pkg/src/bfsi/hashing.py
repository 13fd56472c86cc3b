"""Seeded hash family over q-grams and the interleaved bit addressing.

Each q-gram is reduced to two 64-bit values (g1, g2): an FNV-1a pass over
the gram bytes, started from a seed-derived offset, then finalized with the
64-bit avalanche mix from MurmurHash3. g2 is forced odd. The u row indices
of a gram in a table with L rows are

    h_k = (g1 + k * g2 mod 2**64) mod L        k = 0 .. u-1

so one pair serves any table size, and double hashing keeps the rows well
spread. Bit ``h * r + j`` of a superblock table belongs to row ``h`` of
block ``j``; consecutive blocks therefore touch adjacent bits.

Python-int and numpy paths implement the same function bit for bit; the
bulk path hashes many text positions per call.
"""
from __future__ import annotations

import numpy as np

_M64 = 0xFFFFFFFFFFFFFFFF
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_SEED_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xFF51AFD7ED558CCD
_MIX_B = 0xC4CEB9FE1A85EC53


def _fmix64(x: int) -> int:
    x ^= x >> 33
    x = (x * _MIX_A) & _M64
    x ^= x >> 33
    x = (x * _MIX_B) & _M64
    x ^= x >> 33
    return x


def _stream_inits(seed: int) -> tuple[int, int]:
    seed &= _M64
    return (_FNV_OFFSET ^ _fmix64(seed),
            _FNV_OFFSET ^ _fmix64(seed ^ _SEED_GAMMA))


def gram_pair(gram: bytes, seed: int) -> tuple[int, int]:
    """The reusable (g1, g2) of one q-gram; depends only on its bytes."""
    h1, h2 = _stream_inits(seed)
    for byte in gram:
        h1 = ((h1 ^ byte) * _FNV_PRIME) & _M64
        h2 = ((h2 ^ byte) * _FNV_PRIME) & _M64
    return _fmix64(h1), _fmix64(h2) | 1


def rows_from_pair(g1: int, g2: int, u: int, L: int) -> tuple[int, ...]:
    """The u row indices of a gram in a table with L rows."""
    return tuple(((g1 + k * g2) & _M64) % L for k in range(u))


def base_hashes(gram: bytes, u: int, L: int, seed: int) -> tuple[int, ...]:
    """Row indices of ``gram``, each in [0, L)."""
    if L < 1:
        raise ValueError("L must be >= 1")
    if u < 1:
        raise ValueError("u must be >= 1")
    g1, g2 = gram_pair(gram, seed)
    return rows_from_pair(g1, g2, u, L)


def lane_address(h: int, r: int, j: int) -> int:
    """Bit offset of row ``h`` for block ``j``: h*r + j, so offset mod r = j."""
    return h * r + j


def _fmix64_vec(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    x ^= x >> np.uint64(33)
    x *= np.uint64(_MIX_A)
    x ^= x >> np.uint64(33)
    x *= np.uint64(_MIX_B)
    x ^= x >> np.uint64(33)
    return x


def gram_pairs_bulk(text: np.ndarray, positions: np.ndarray, q: int,
                    seed: int) -> tuple[np.ndarray, np.ndarray]:
    """(g1, g2) arrays for the q-grams starting at ``positions`` in ``text``.

    ``text`` is a uint8 array; every position must satisfy pos + q <= len.
    Matches :func:`gram_pair` exactly.
    """
    i1, i2 = _stream_inits(seed)
    h1 = np.full(positions.shape, i1, dtype=np.uint64)
    h2 = np.full(positions.shape, i2, dtype=np.uint64)
    prime = np.uint64(_FNV_PRIME)
    for t in range(q):
        sym = text[positions + t].astype(np.uint64)
        h1 ^= sym
        h1 *= prime
        h2 ^= sym
        h2 *= prime
    return _fmix64_vec(h1), _fmix64_vec(h2) | np.uint64(1)
