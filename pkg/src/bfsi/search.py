"""Candidate block enumeration and verified pattern search.

A block g stays a candidate only if the variant predicate holds over the
union of the filters of blocks g and g+1. The union matters: an occurrence
starting near the end of g spills its later q-grams into g+1, so testing
g alone would lose it. Under the interleaved layout the union is one OR
of a lane with its right shift, plus block 0 of the next superblock for
the lane's last bit. Candidates are scanned over their block extended by
m-1 bytes and only starts inside the block are reported, so occurrences
are never duplicated across adjacent candidates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .builder import Index
from .errors import PatternLengthError, TextMismatchError
from .params import TextHandle, Variant, blocks_in, required_min_m
from .sampling import QueryPlan, query_plan
from .verify import find_all, resolve_kind, route_verifier


@dataclass(frozen=True)
class CandidateBlock:
    g: int           # global block id
    start: int       # g * b
    block_end: int   # min((g+1) * b, n); occurrence starts stay below this
    scan_end: int    # min((g+1) * b + m - 1, n)


@dataclass(frozen=True)
class SearchReport:
    occurrences: list[int]
    candidate_blocks: int
    blocks_total: int
    scanned_bytes: int
    filter_probe_count: int


class _ProbeCounter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


def candidate_blocks(index: Index, plan: QueryPlan,
                     probes: _ProbeCounter | None = None) -> Iterator[CandidateBlock]:
    """Blocks the filter cannot exclude for ``plan``, in ascending order."""
    params = index.params
    b, r, u = params.b, params.r, params.u
    n = index.n
    blocks_total = blocks_in(n, b)
    tables = index.tables
    top_bit = 1 << (r - 1)
    full = (1 << r) - 1
    m = plan.m

    for i, table in enumerate(tables):
        nxt = tables[i + 1] if i + 1 < len(tables) else None
        union = {}

        def union_mask(pair):
            got = union.get(pair)
            if got is None:
                rows = table.base_rows(pair[0], pair[1], u)
                mask = table.test_lane(rows)
                if probes is not None:
                    probes.count += 1
                got = mask | (mask >> 1)
                if nxt is not None and not got & top_bit:
                    nrows = nxt.base_rows(pair[0], pair[1], u)
                    if probes is not None:
                        probes.count += 1
                    if nxt.test_block(nrows, 0):
                        got |= top_bit
                union[pair] = got
            return got

        cand = 0
        if plan.variant is Variant.SAM:
            for cls in plan.classes:
                cls_mask = full
                for gi in cls:
                    cls_mask &= union_mask(plan.pairs[gi])
                    if not cls_mask:
                        break
                cand |= cls_mask
                if cand == full:
                    break
        else:
            cand = full
            for pair in plan.pairs:
                cand &= union_mask(pair)
                if not cand:
                    break

        base = i * r
        limit = min(r, blocks_total - base)
        cand &= full if limit >= r else (1 << limit) - 1
        while cand:
            low = cand & -cand
            cand ^= low
            g = base + low.bit_length() - 1
            start = g * b
            yield CandidateBlock(
                g=g,
                start=start,
                block_end=min(start + b, n),
                scan_end=min(start + b + m - 1, n),
            )


def search(index: Index, text: TextHandle, pattern: bytes,
           verifier="auto", allow_fallback: bool = False) -> SearchReport:
    """All occurrences of ``pattern`` in ``text``, filter first, then verify.

    ``verifier`` is a VerifierKind, its name, or "auto" to pick by pattern
    length. A pattern shorter than the variant minimum is an error unless
    ``allow_fallback`` downgrades the call to a full scan; the report then
    shows every block as a candidate.
    """
    if text.checksum != index.text_checksum:
        raise TextMismatchError("index/text mismatch")
    m = len(pattern)
    kind = route_verifier(m or 1) if verifier == "auto" else resolve_kind(verifier)
    params = index.params
    min_m = required_min_m(params)
    if m < min_m and allow_fallback:
        return full_scan(text, pattern, kind, block_size=params.b)
    plan = query_plan(pattern, params)

    probes = _ProbeCounter()
    occurrences: list[int] = []
    scanned = 0
    ncand = 0
    data = text.data
    for cb in candidate_blocks(index, plan, probes):
        ncand += 1
        segment = data[cb.start:cb.scan_end]
        scanned += len(segment)
        for rel in find_all(kind, segment, pattern):
            pos = cb.start + rel
            if pos < cb.block_end:
                occurrences.append(pos)
    return SearchReport(
        occurrences=occurrences,
        candidate_blocks=ncand,
        blocks_total=index.blocks_total,
        scanned_bytes=scanned,
        filter_probe_count=probes.count,
    )


def full_scan(text: TextHandle, pattern: bytes, verifier="auto",
              block_size: int | None = None) -> SearchReport:
    """Scan the whole text with a verifier; the filterless baseline."""
    m = len(pattern)
    if m < 1:
        raise ValueError("pattern must not be empty")
    kind = route_verifier(m) if verifier == "auto" else resolve_kind(verifier)
    total = blocks_in(text.n, block_size) if block_size else 1
    return SearchReport(
        occurrences=find_all(kind, text.data, pattern),
        candidate_blocks=total,
        blocks_total=total,
        scanned_bytes=text.n,
        filter_probe_count=0,
    )
