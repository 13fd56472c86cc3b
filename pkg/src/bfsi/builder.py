"""Index construction, the on-disk format, and size accounting.

File layout, little-endian throughout:

    magic "BFSI"            4 bytes
    format version          u16   (currently 1)
    variant                 u8    (0 = STD, 1 = SAM, 2 = MSAM)
    q                       u16
    b                       u64
    r                       u32
    c                       u16
    u                       u16
    s                       u32   (0 unless SAM)
    w, p                    u32   (0 unless MSAM)
    seed                    u64
    n                       u64   (indexed text length)
    text_checksum           u64
    superblock_count        u64
    per superblock:         L as u32, then ceil(L*r/8) bytes of bits,
                            bit ell at byte ell//8, bit ell%8

The text itself is never stored; the checksum is verified against the
text supplied at search time. Each superblock table sizes itself as
L = c * D rows (rounded up for 64-bit lane alignment), where D is the
largest number of distinct sampled grams any of its blocks received, so
index size tracks the inserted material rather than the block capacity.
"""
from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bloom import InterleavedTable, align_rows
from .errors import (BadMagicError, IndexFormatError, TruncatedIndexError,
                     UnsupportedVersionError)
from .params import (IndexParams, TextHandle, Variant, blocks_in,
                     superblocks_in, validate_params)
from .sampling import build_positions
from .hashing import gram_pairs_bulk

MAGIC = b"BFSI"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sHBHQIHHIIIQQQQ")
_LANE_ROWS = struct.Struct("<I")
_VARIANT_CODE = {Variant.STD: 0, Variant.SAM: 1, Variant.MSAM: 2}
_CODE_VARIANT = {v: k for k, v in _VARIANT_CODE.items()}


@dataclass(frozen=True)
class BuildInfo:
    """Counters collected while building; not stored in the file."""

    sampled_grams: int
    distinct_grams: int


@dataclass(eq=True)
class Index:
    params: IndexParams
    tables: list[InterleavedTable]
    n: int
    text_checksum: int
    build_info: BuildInfo | None = field(default=None, compare=False)

    @property
    def blocks_total(self) -> int:
        return blocks_in(self.n, self.params.b)


def build(text: TextHandle, params: IndexParams, threads: int = 1) -> Index:
    """Construct the semi-index for ``text``; deterministic for fixed seed."""
    validate_params(params)
    if text.n < params.q:
        raise ValueError("text shorter than q")

    b, r, c, u = params.b, params.r, params.c, params.u
    nblocks = blocks_in(text.n, b)
    nsuper = superblocks_in(text.n, b, r)

    positions = build_positions(text, params)
    if positions.size:
        g1, g2 = gram_pairs_bulk(text.view, positions, params.q, params.seed)
        block = positions // b
        # Set semantics per block: one insert per distinct (block, g1, g2).
        order = np.lexsort((g2, g1, block))
        block, g1, g2 = block[order], g1[order], g2[order]
        fresh = np.empty(block.size, dtype=bool)
        fresh[0] = True
        fresh[1:] = ((block[1:] != block[:-1]) | (g1[1:] != g1[:-1])
                     | (g2[1:] != g2[:-1]))
        block, g1, g2 = block[fresh], g1[fresh], g2[fresh]
    else:
        block = np.empty(0, dtype=np.int64)
        g1 = g2 = np.empty(0, dtype=np.uint64)

    counts = np.bincount(block, minlength=nsuper * r)
    d_max = counts.reshape(nsuper, r).max(axis=1)
    lane_rows = [align_rows(c * max(int(d), 1), r) for d in d_max]

    sb = block // r
    bounds = np.searchsorted(sb, np.arange(nsuper + 1))
    j_all = (block % r).astype(np.int64)

    def fill(i: int) -> InterleavedTable:
        lo, hi = bounds[i], bounds[i + 1]
        L = lane_rows[i]
        if lo == hi:
            return InterleavedTable(L, r)
        sg1, sg2, sj = g1[lo:hi], g2[lo:hi], j_all[lo:hi]
        parts = []
        for k in range(u):
            rows = ((sg1 + np.uint64(k) * sg2) % np.uint64(L)).astype(np.int64)
            parts.append(rows * r + sj)
        return InterleavedTable.from_offsets(L, r, np.concatenate(parts))

    if threads > 1 and nsuper > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tables = list(pool.map(fill, range(nsuper)))
    else:
        tables = [fill(i) for i in range(nsuper)]

    info = BuildInfo(sampled_grams=int(positions.size),
                     distinct_grams=int(block.size))
    return Index(params=params, tables=tables, n=text.n,
                 text_checksum=text.checksum, build_info=info)


def serialize(index: Index) -> bytes:
    p = index.params
    out = [_HEADER.pack(MAGIC, FORMAT_VERSION, _VARIANT_CODE[p.variant],
                        p.q, p.b, p.r, p.c, p.u, p.s, p.w, p.p,
                        p.seed, index.n, index.text_checksum,
                        len(index.tables))]
    for table in index.tables:
        out.append(_LANE_ROWS.pack(table.L))
        out.append(table.payload())
    return b"".join(out)


def deserialize(data: bytes) -> Index:
    if len(data) < len(MAGIC):
        raise TruncatedIndexError("stream shorter than the magic")
    if data[:4] != MAGIC:
        raise BadMagicError("bad magic")
    if len(data) < _HEADER.size:
        raise TruncatedIndexError("truncated header")
    (_, version, vcode, q, b, r, c, u, s, w, p, seed, n, checksum,
     nsuper) = _HEADER.unpack_from(data)
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"unsupported format version {version}")
    if vcode not in _CODE_VARIANT:
        raise IndexFormatError(f"unknown variant code {vcode}")
    try:
        params = IndexParams(variant=_CODE_VARIANT[vcode], q=q, b=b, r=r,
                             c=c, u=u, s=s, w=w, p=p, seed=seed)
    except ValueError as exc:
        raise IndexFormatError(f"invalid parameters in header: {exc}") from exc
    if nsuper != superblocks_in(n, b, r) or n < 1:
        raise IndexFormatError("superblock count does not match text length")

    tables = []
    offset = _HEADER.size
    for _ in range(nsuper):
        if offset + _LANE_ROWS.size > len(data):
            raise TruncatedIndexError("truncated before a table header")
        (rows,) = _LANE_ROWS.unpack_from(data, offset)
        offset += _LANE_ROWS.size
        if rows < 1:
            raise IndexFormatError("table row count must be >= 1")
        nbytes = (rows * r + 7) // 8
        if offset + nbytes > len(data):
            raise TruncatedIndexError("truncated inside a table")
        tables.append(InterleavedTable(rows, r, bytearray(data[offset:offset + nbytes])))
        offset += nbytes
    if offset != len(data):
        raise IndexFormatError("trailing bytes after the last table")
    return Index(params=params, tables=tables, n=n, text_checksum=checksum)


def serialized_size(index: Index) -> int:
    per_table = sum(_LANE_ROWS.size + len(t.bits) for t in index.tables)
    return _HEADER.size + per_table


@dataclass(frozen=True)
class IndexStats:
    index_bytes: int
    index_fraction: float
    superblocks: int
    lane_rows: list[int]
    bit_density: list[float]
    sampled_grams: int | None
    distinct_grams: int | None


def stats(index: Index, text: TextHandle | None = None) -> IndexStats:
    """Exact size accounting plus fill ratios.

    Gram counts come from the build, or are recounted when ``text`` is
    given; an index loaded from disk without its text reports them as None.
    """
    sampled = distinct = None
    if index.build_info is not None:
        sampled = index.build_info.sampled_grams
        distinct = index.build_info.distinct_grams
    elif text is not None:
        positions = build_positions(text, index.params)
        sampled = int(positions.size)
        if positions.size:
            g1, g2 = gram_pairs_bulk(text.view, positions, index.params.q,
                                     index.params.seed)
            block = positions // index.params.b
            distinct = len({t for t in zip(block.tolist(), g1.tolist(),
                                           g2.tolist())})
        else:
            distinct = 0
    return IndexStats(
        index_bytes=serialized_size(index),
        index_fraction=serialized_size(index) / index.n,
        superblocks=len(index.tables),
        lane_rows=[t.L for t in index.tables],
        bit_density=[t.popcount() / t.nbits for t in index.tables],
        sampled_grams=sampled,
        distinct_grams=distinct,
    )
