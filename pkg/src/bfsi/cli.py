"""Command-line front end: build, search, stats, bench.

bench emits one CSV row per grid point with the fixed header

    variant,q,b,r,c,s,w,p,m,index_bytes,index_fraction,candidate_fraction,
    scanned_fraction,matches,build_ms,mean_search_us,search_MBps

Timing columns are informative; all other columns are deterministic for a
fixed --seed. A grid point whose minimum pattern length exceeds m is
reported as a row with empty metric columns and a warning on stderr.
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

import numpy as np

from . import builder
from .errors import IndexFormatError, TextMismatchError
from .params import IndexParams, TextHandle, Variant, required_min_m
from .search import search
from .verify import VerifierKind

BENCH_COLUMNS = ["variant", "q", "b", "r", "c", "s", "w", "p", "m",
                 "index_bytes", "index_fraction", "candidate_fraction",
                 "scanned_fraction", "matches", "build_ms", "mean_search_us",
                 "search_MBps"]


def _default_threads() -> int:
    env = os.environ.get("BFSI_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


def _int_list(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok]


def _params_from_args(args, variant: Variant) -> IndexParams:
    return IndexParams(
        variant=variant, q=args.q, b=args.b, r=args.r, c=args.c, u=args.u,
        s=args.s if variant is Variant.SAM else 0,
        w=args.w if variant is Variant.MSAM else 0,
        p=args.p if variant is Variant.MSAM else 0,
        seed=args.seed)


def cmd_build(args) -> int:
    text = TextHandle.from_file(args.input)
    params = _params_from_args(args, Variant(args.variant))
    t0 = time.perf_counter()
    index = builder.build(text, params, threads=args.threads)
    elapsed = time.perf_counter() - t0
    payload = builder.serialize(index)
    with open(args.output, "wb") as fh:
        fh.write(payload)
    st = builder.stats(index)
    print(f"indexed {text.n} bytes in {elapsed * 1000:.1f} ms")
    print(f"index_bytes={st.index_bytes} index_fraction={st.index_fraction:.4f}")
    print(f"superblocks={st.superblocks} sampled_grams={st.sampled_grams} "
          f"distinct_grams={st.distinct_grams}")
    return 0


def _pattern_from_args(args, text: TextHandle) -> bytes:
    if args.pattern is not None:
        return args.pattern.encode("utf-8")
    if args.pattern_hex is not None:
        return bytes.fromhex(args.pattern_hex)
    if args.pattern_offset is None or args.pattern_length is None:
        raise ValueError("give --pattern, --pattern-hex, or both "
                         "--pattern-offset and --pattern-length")
    lo = args.pattern_offset
    hi = lo + args.pattern_length
    if not 0 <= lo < hi <= text.n:
        raise ValueError("pattern offset/length outside the text")
    return text.data[lo:hi]


def cmd_search(args) -> int:
    with open(args.index, "rb") as fh:
        index = builder.deserialize(fh.read())
    text = TextHandle.from_file(args.text)
    pattern = _pattern_from_args(args, text)
    report = search(index, text, pattern, verifier=args.verifier,
                    allow_fallback=args.fallback_scan)
    if args.count:
        print(len(report.occurrences))
    else:
        for pos in report.occurrences:
            print(pos)
    print(f"# candidates={report.candidate_blocks} "
          f"blocks={report.blocks_total} scanned_bytes={report.scanned_bytes} "
          f"probes={report.filter_probe_count}", file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    with open(args.index, "rb") as fh:
        raw = fh.read()
    index = builder.deserialize(raw)
    st = builder.stats(index)
    p = index.params
    header = {
        "version": builder.FORMAT_VERSION,
        "variant": p.variant.value,
        "q": p.q, "b": p.b, "r": p.r, "c": p.c, "u": p.u,
        "s": p.s, "w": p.w, "p": p.p,
        "seed": p.seed,
        "n": index.n,
        "text_checksum": f"{index.text_checksum:016x}",
        "superblock_count": len(index.tables),
    }
    if args.json:
        print(json.dumps({**header, **asdict(st)}, indent=2))
    else:
        for key, value in header.items():
            print(f"{key}: {value}")
        print(f"index_bytes: {st.index_bytes}")
        print(f"index_fraction: {st.index_fraction:.6f}")
        print(f"lane_rows: {st.lane_rows}")
        density = ", ".join(f"{d:.4f}" for d in st.bit_density)
        print(f"bit_density: [{density}]")
    return 0


def _grid(args):
    for variant in [Variant(v) for v in args.variant]:
        svals = args.s if variant is Variant.SAM else [0]
        wpvals = ([(w, p) for w in args.w for p in args.p if p < w]
                  if variant is Variant.MSAM else [(0, 0)])
        for q, b, c, sv, (wv, pv), m in itertools.product(
                args.q, args.b, args.c, svals, wpvals, args.m):
            yield variant, q, b, c, sv, wv, pv, m


def _sample_patterns(text: TextHandle, m: int, count: int, seed: int,
                     point: int, absent: bool) -> list[bytes]:
    rng = np.random.default_rng([seed, point])
    if not absent:
        offsets = rng.integers(0, text.n - m + 1, size=count)
        return [text.data[o:o + m] for o in offsets]
    alphabet = sorted(set(text.data))
    patterns = []
    while len(patterns) < count:
        cand = bytes(rng.choice(alphabet, size=m).tolist())
        for _ in range(100):
            if text.data.find(cand) < 0:
                break
            cand = bytes(rng.choice(alphabet, size=m).tolist())
        patterns.append(cand)
    return patterns


def _bench_point(text, args, point_id, point):
    variant, q, b, c, sv, wv, pv, m = point
    row = {"variant": variant.value, "q": q, "b": b, "r": args.r, "c": c,
           "s": sv, "w": wv, "p": pv, "m": m}
    try:
        params = IndexParams(variant=variant, q=q, b=b, r=args.r, c=c,
                             u=args.u, s=sv, w=wv, p=pv, seed=args.seed)
    except ValueError as exc:
        print(f"warning: skipping grid point {row}: {exc}", file=sys.stderr)
        return row
    min_m = required_min_m(params)
    if m < min_m or m > b or m > text.n:
        print(f"warning: skipping grid point {row}: m={m} outside "
              f"[{min_m}, {min(b, text.n)}]", file=sys.stderr)
        return row

    t0 = time.perf_counter()
    index = builder.build(text, params)
    build_ms = (time.perf_counter() - t0) * 1000

    patterns = _sample_patterns(text, m, args.patterns, args.seed, point_id,
                                args.absent)
    matches = 0
    cand_fracs = []
    scan_fracs = []
    t0 = time.perf_counter()
    for pattern in patterns:
        report = search(index, text, pattern, verifier=args.verifier)
        matches += len(report.occurrences)
        cand_fracs.append(report.candidate_blocks / report.blocks_total)
        scan_fracs.append(report.scanned_bytes / text.n)
    mean_s = (time.perf_counter() - t0) / len(patterns)

    st = builder.stats(index)
    row.update({
        "index_bytes": st.index_bytes,
        "index_fraction": f"{st.index_fraction:.6f}",
        "candidate_fraction": f"{float(np.mean(cand_fracs)):.6f}",
        "scanned_fraction": f"{float(np.mean(scan_fracs)):.6f}",
        "matches": matches,
        "build_ms": f"{build_ms:.3f}",
        "mean_search_us": f"{mean_s * 1e6:.3f}",
        "search_MBps": f"{text.n / (1 << 20) / mean_s:.3f}" if mean_s > 0 else "",
    })
    return row


def cmd_bench(args) -> int:
    text = TextHandle.from_file(args.text)
    points = list(_grid(args))
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, restval="")
        writer.writeheader()
        if args.threads > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                rows = pool.map(lambda ip: _bench_point(text, args, *ip),
                                enumerate(points))
                for row in rows:
                    writer.writerow(row)
        else:
            for i, point in enumerate(points):
                writer.writerow(_bench_point(text, args, i, point))
    finally:
        if args.output:
            out.close()
    return 0


def _add_param_flags(sub, with_lists: bool):
    kind = _int_list if with_lists else int
    sub.add_argument("--q", type=kind, default=[8] if with_lists else 8,
                     help="q-gram length")
    sub.add_argument("--b", type=kind, default=[8192] if with_lists else 8192,
                     help="block size in bytes")
    sub.add_argument("--c", type=kind, default=[6] if with_lists else 6,
                     help="filter bits per inserted gram")
    sub.add_argument("--s", type=kind, default=[2] if with_lists else 1,
                     help="sampling step (sam)")
    sub.add_argument("--w", type=kind, default=[8] if with_lists else 0,
                     help="minimizer window (msam)")
    sub.add_argument("--p", type=kind, default=[4] if with_lists else 0,
                     help="minimizer length (msam)")
    sub.add_argument("--r", type=int, default=64,
                     help="blocks per superblock")
    sub.add_argument("--u", type=int, default=None,
                     help="hash count override (default: derived from c)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfsi",
        description="Bloom-filter semi-index over q-grams")
    parser.add_argument("--seed", type=int, default=0,
                        help="64-bit hash / sampling seed")
    parser.add_argument("--threads", type=int, default=_default_threads(),
                        help="worker threads (or BFSI_THREADS)")
    commands = parser.add_subparsers(dest="command", required=True)

    p_build = commands.add_parser("build", help="build an index file")
    p_build.add_argument("-i", "--input", required=True, help="text file")
    p_build.add_argument("-o", "--output", required=True, help="index file")
    p_build.add_argument("--variant", choices=[v.value for v in Variant],
                         default="std")
    _add_param_flags(p_build, with_lists=False)
    p_build.set_defaults(func=cmd_build)

    p_search = commands.add_parser("search", help="search a pattern")
    p_search.add_argument("-x", "--index", required=True)
    p_search.add_argument("-t", "--text", required=True)
    p_search.add_argument("--pattern")
    p_search.add_argument("--pattern-hex")
    p_search.add_argument("--pattern-offset", type=int)
    p_search.add_argument("--pattern-length", type=int)
    p_search.add_argument("--count", action="store_true",
                          help="print only the number of occurrences")
    p_search.add_argument("--verifier", default="auto",
                          choices=["auto"] + [k.value for k in VerifierKind])
    p_search.add_argument("--fallback-scan", action="store_true",
                          help="full scan instead of erroring on short patterns")
    p_search.set_defaults(func=cmd_search)

    p_stats = commands.add_parser("stats", help="inspect an index file")
    p_stats.add_argument("index")
    p_stats.add_argument("--json", action="store_true")
    p_stats.set_defaults(func=cmd_stats)

    p_bench = commands.add_parser("bench", help="parameter sweep to CSV")
    p_bench.add_argument("-t", "--text", required=True)
    p_bench.add_argument("-o", "--output", help="CSV file (default stdout)")
    p_bench.add_argument("--variant", type=lambda s: s.split(","),
                         default=["std"])
    _add_param_flags(p_bench, with_lists=True)
    p_bench.add_argument("--m", type=_int_list, default=[32],
                         help="pattern lengths")
    p_bench.add_argument("--patterns", type=int, default=100,
                         help="patterns per grid point")
    p_bench.add_argument("--absent", action="store_true",
                         help="benchmark patterns verified absent instead")
    p_bench.add_argument("--verifier", default="auto",
                         choices=["auto"] + [k.value for k in VerifierKind])
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexFormatError, TextMismatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
