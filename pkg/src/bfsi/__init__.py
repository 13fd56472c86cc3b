"""Bloom-filter semi-index over q-grams.

Builds a small per-superblock filter over a text so that exact pattern
searches can skip most blocks and scan only what the filter cannot
exclude. The text stays required at query time; the index never loses an
occurrence, it only costs extra scanning when it guesses wrong.
"""
from .bloom import InterleavedTable, align_rows
from .builder import (BuildInfo, Index, IndexStats, build, deserialize,
                      serialize, serialized_size, stats)
from .errors import (BadMagicError, IndexFormatError, PatternLengthError,
                     TextMismatchError, TruncatedIndexError,
                     UnsupportedVersionError)
from .hashing import base_hashes, gram_pair, gram_pairs_bulk, lane_address
from .params import (IndexParams, TextHandle, Variant, block_of, blocks_in,
                     derive_hash_count, required_min_m, superblocks_in,
                     text_checksum, validate_params)
from .sampling import (QueryPlan, build_positions, minimizer_positions,
                       query_plan)
from .search import (CandidateBlock, SearchReport, candidate_blocks,
                     full_scan, search)
from .verify import VerifierKind, find_all, route_verifier

__version__ = "0.1.0"

__all__ = [
    "BadMagicError",
    "BuildInfo",
    "CandidateBlock",
    "Index",
    "IndexFormatError",
    "IndexParams",
    "IndexStats",
    "InterleavedTable",
    "PatternLengthError",
    "QueryPlan",
    "SearchReport",
    "TextHandle",
    "TextMismatchError",
    "TruncatedIndexError",
    "UnsupportedVersionError",
    "VerifierKind",
    "Variant",
    "align_rows",
    "base_hashes",
    "block_of",
    "blocks_in",
    "build",
    "build_positions",
    "candidate_blocks",
    "derive_hash_count",
    "deserialize",
    "find_all",
    "full_scan",
    "gram_pair",
    "gram_pairs_bulk",
    "lane_address",
    "minimizer_positions",
    "query_plan",
    "required_min_m",
    "route_verifier",
    "search",
    "serialize",
    "serialized_size",
    "stats",
    "superblocks_in",
    "text_checksum",
    "validate_params",
]
