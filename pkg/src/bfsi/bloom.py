"""Interleaved Bloom filter table for one superblock.

One bit array of L*r bits holds r logical Bloom filters of L bits each,
one per block of the superblock. Bit ``ell`` belongs to block
``ell mod r`` and row ``ell // r``, so the r bits of one row sit next to
each other (a "lane") and testing a gram against every block of the
superblock reads u contiguous lanes instead of u*r scattered bits.

A table is mutable while its superblock is being built (single writer)
and read-only afterwards; readers may share it freely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hashing import rows_from_pair

# Dense one-shot fills allocate nbits counters; above this, sort instead.
_DENSE_FILL_LIMIT = 1 << 25


def align_rows(rows: int, r: int) -> int:
    """Round a row count up so that rows*r is a multiple of 64 bits."""
    step = 64 // math.gcd(r, 64)
    return -(-rows // step) * step


@dataclass(eq=True)
class InterleavedTable:
    L: int
    r: int
    bits: bytearray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("L must be >= 1")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        nbytes = (self.L * self.r + 7) // 8
        if self.bits is None:
            self.bits = bytearray(nbytes)
        else:
            self.bits = bytearray(self.bits)
            if len(self.bits) != nbytes:
                raise ValueError(
                    f"bit payload is {len(self.bits)} bytes, expected {nbytes}")

    @property
    def nbits(self) -> int:
        return self.L * self.r

    def insert(self, hashes, j: int) -> None:
        """Set the bits of ``hashes`` for block ``j``. Idempotent."""
        r = self.r
        for h in hashes:
            pos = h * r + j
            self.bits[pos >> 3] |= 1 << (pos & 7)

    def test_block(self, hashes, j: int) -> bool:
        """True iff every bit of ``hashes`` is set for block ``j``."""
        r = self.r
        buf = self.bits
        for h in hashes:
            pos = h * r + j
            if not (buf[pos >> 3] >> (pos & 7)) & 1:
                return False
        return True

    def lane(self, h: int) -> int:
        """The r bits of row ``h`` as an int; bit j belongs to block j."""
        r = self.r
        start = h * r
        if r == 64 and start & 7 == 0:
            base = start >> 3
            return int.from_bytes(self.bits[base:base + 8], "little")
        end = start + r
        chunk = int.from_bytes(self.bits[start >> 3:(end + 7) >> 3], "little")
        return (chunk >> (start & 7)) & ((1 << r) - 1)

    def test_lane(self, hashes) -> int:
        """AND of the row lanes: bit j equals test_block(hashes, j)."""
        mask = (1 << self.r) - 1
        for h in hashes:
            mask &= self.lane(h)
            if not mask:
                break
        return mask

    def base_rows(self, g1: int, g2: int, u: int) -> tuple[int, ...]:
        """Row indices of a gram pair in this table."""
        return rows_from_pair(g1, g2, u, self.L)

    def popcount(self) -> int:
        return int.from_bytes(self.bits, "little").bit_count()

    def payload(self) -> bytes:
        return bytes(self.bits)

    @classmethod
    def from_offsets(cls, L: int, r: int, offsets: np.ndarray) -> "InterleavedTable":
        """Build a table in one shot from the bit offsets to set."""
        nbits = L * r
        if offsets.size == 0:
            return cls(L, r)
        if nbits <= _DENSE_FILL_LIMIT:
            payload = _fill_dense(offsets, nbits)
        else:
            payload = _fill_sparse(offsets, nbits)
        table = cls(L, r)
        table.bits[:len(payload)] = payload
        return table


def _fill_dense(offsets: np.ndarray, nbits: int) -> bytes:
    hit = np.bincount(offsets, minlength=nbits) > 0
    return np.packbits(hit, bitorder="little").tobytes()


def _fill_sparse(offsets: np.ndarray, nbits: int) -> bytes:
    offsets = np.sort(offsets)
    byte_idx = offsets >> 3
    masks = (np.uint8(1) << (offsets & 7).astype(np.uint8))
    starts = np.flatnonzero(np.r_[True, byte_idx[1:] != byte_idx[:-1]])
    merged = np.bitwise_or.reduceat(masks, starts)
    out = np.zeros((nbits + 7) // 8, dtype=np.uint8)
    out[byte_idx[starts]] = merged
    return out.tobytes()
