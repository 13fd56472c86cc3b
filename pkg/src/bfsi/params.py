"""Parameter model and derived quantities shared by every other module.

The text is split into fixed blocks of ``b`` symbols and ``r`` consecutive
blocks form a superblock. A filter records the sampled q-grams of each
superblock; which q-grams get sampled depends on the variant:

* STD inserts every overlapping q-gram,
* SAM inserts q-grams starting at positions divisible by ``s``,
* MSAM inserts q-grams at window-minimizer start positions (window ``w``,
  minimizer length ``p``).

All types here are immutable after construction and safe to share across
threads.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from enum import Enum


class Variant(Enum):
    STD = "std"
    SAM = "sam"
    MSAM = "msam"


_MAX_U16 = 0xFFFF
_MAX_U32 = 0xFFFFFFFF
_MAX_U64 = 0xFFFFFFFFFFFFFFFF


def derive_hash_count(c: int) -> int:
    """Number of hash functions for ``c`` bits per item.

    Uses the standard Bloom filter optimum round(c * ln 2), floored at 1.
    Callers may override the result by passing ``u`` explicitly to
    :class:`IndexParams`.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    return max(1, round(c * math.log(2)))


@dataclass(frozen=True)
class IndexParams:
    """Every tunable of the scheme, validated on construction.

    ``s`` applies only to SAM, ``w`` and ``p`` only to MSAM; they must be
    left at 0 for other variants and are serialized as 0 there. ``u``
    defaults to ``derive_hash_count(c)`` when not given.
    """

    variant: Variant
    q: int
    b: int
    r: int = 64
    c: int = 6
    u: int | None = None
    s: int = 0
    w: int = 0
    p: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.u is None:
            object.__setattr__(self, "u", derive_hash_count(self.c))
        validate_params(self)


def validate_params(params: IndexParams) -> None:
    """Raise ValueError naming the violated constraint, if any."""
    v = params.variant
    if not isinstance(v, Variant):
        raise ValueError(f"unknown variant {v!r}")
    if params.q < 2:
        raise ValueError("q must be >= 2")
    if params.q > _MAX_U16:
        raise ValueError("q must fit in 16 bits")
    if params.b < params.q:
        raise ValueError("b must be >= q")
    if params.r < 1:
        raise ValueError("r must be >= 1")
    if params.r > _MAX_U32:
        raise ValueError("r must fit in 32 bits")
    if params.c < 1:
        raise ValueError("c must be >= 1")
    if params.c > _MAX_U16:
        raise ValueError("c must fit in 16 bits")
    if params.u < 1:
        raise ValueError("u must be >= 1")
    if params.u > _MAX_U16:
        raise ValueError("u must fit in 16 bits")
    if params.b * params.r > _MAX_U64:
        raise ValueError("b * r must not overflow a 64-bit count")
    # Table rows are stored as u32 per superblock; c*b bounds the row count.
    if params.c * params.b + 64 > _MAX_U32:
        raise ValueError("c * b too large for the 32-bit table row count")
    if not 0 <= params.seed <= _MAX_U64:
        raise ValueError("seed must fit in 64 bits")

    if v is Variant.SAM:
        if params.s < 1:
            raise ValueError("s must be >= 1 for the SAM variant")
        if params.s > _MAX_U32:
            raise ValueError("s must fit in 32 bits")
    elif params.s != 0:
        raise ValueError("s applies only to the SAM variant")

    if v is Variant.MSAM:
        if params.p < 1:
            raise ValueError("p must be >= 1")
        if params.p >= params.w:
            raise ValueError("p must be < w")
        if params.w > params.b:
            raise ValueError("w must be <= b")
        if params.w > _MAX_U32:
            raise ValueError("w must fit in 32 bits")
    elif params.w != 0 or params.p != 0:
        raise ValueError("w and p apply only to the MSAM variant")


def required_min_m(params: IndexParams) -> int:
    """Smallest pattern length the variant can search without a fallback scan.

    STD needs one whole q-gram. SAM needs the pattern to cover a full
    sampling period so that some residue class is entirely sampled. MSAM
    needs at least one pattern minimizer whose q-gram fits in the pattern.
    """
    if params.variant is Variant.SAM:
        return params.q + params.s - 1
    if params.variant is Variant.MSAM:
        return max(params.q, params.w, params.w + params.q - params.p)
    return params.q


def block_of(position: int, b: int, r: int) -> tuple[int, int]:
    """Map a text position to (superblock index, block index within it)."""
    g = position // b
    return g // r, g % r


def blocks_in(n: int, b: int) -> int:
    """Number of blocks covering a text of n symbols (last may be partial)."""
    return -(-n // b)


def superblocks_in(n: int, b: int, r: int) -> int:
    """Number of superblocks covering a text of n symbols."""
    return -(-blocks_in(n, b) // r)


class TextHandle:
    """Immutable byte text plus cached derived views.

    The checksum and the numpy view are computed once on first use; the
    handle is safe to share across concurrent readers.
    """

    __slots__ = ("data", "n", "_checksum", "_view")

    def __init__(self, data: bytes):
        if len(data) < 1:
            raise ValueError("text must contain at least one symbol")
        self.data = bytes(data)
        self.n = len(self.data)
        self._checksum = None
        self._view = None

    @classmethod
    def from_file(cls, path) -> "TextHandle":
        with open(path, "rb") as fh:
            return cls(fh.read())

    @property
    def checksum(self) -> int:
        if self._checksum is None:
            self._checksum = text_checksum(self.data)
        return self._checksum

    @property
    def view(self):
        if self._view is None:
            import numpy as np

            self._view = np.frombuffer(self.data, dtype=np.uint8)
        return self._view


def text_checksum(data: bytes) -> int:
    """64-bit checksum of the text, stored in the index header.

    BLAKE2b truncated to 8 bytes, read little-endian. Only used to detect
    an index applied to the wrong text.
    """
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")
