"""``samurai`` command line: build, query, approx, bench.

Exit codes: 0 found / ok, 1 not found, 2 error.  JSON-lines diagnostics go to
stdout, human-readable messages to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import struct
import sys
import time
from typing import Optional

import numpy as np

from .approx_match import MODES, approximate
from .core_index import IndexBuildError, SuffixIndex
from .parallel_engine import Engine, PramConfig, occurrences
from .search import ProbeStats

MAGIC = b"SAMR"
VERSION = 1
_HEADER = struct.Struct("<4sIIIIQI")   # magic, version, n, sigma, delta, seed, flags
FLAG_REBUILD = 1                        # tree and dictionaries are rebuilt on load
_KINDS = ("str", "bytes", "ints")

EXIT_FOUND, EXIT_ABSENT, EXIT_ERROR = 0, 1, 2


class IndexFormatError(ValueError):
    pass


# ------------------------------------------------------------- index files

def save_index(engine: Engine, path: str) -> None:
    idx = engine.idx
    n = idx.n
    flags = FLAG_REBUILD | (_KINDS.index(idx.kind) << 8)
    parts = [
        _HEADER.pack(MAGIC, VERSION, n, idx.sigma, engine.delta, engine.mi.seed, flags),
        np.asarray(idx.alphabet, dtype="<i8").tobytes(),
        np.asarray(idx.text, dtype="<u4").tobytes(),
        np.asarray(idx.sa[1:], dtype="<u4").tobytes(),
        np.asarray(idx.isa[1:n + 1], dtype="<u4").tobytes(),
        np.asarray(idx.lcp[1:], dtype="<u4").tobytes(),
    ]
    with open(path, "wb") as f:
        f.write(b"".join(parts))


def load_index(path: str, cfg: Optional[PramConfig] = None) -> Engine:
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < _HEADER.size:
        raise IndexFormatError("file too short for an index header")
    magic, version, n, sigma, delta, seed, flags = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    if version != VERSION:
        raise IndexFormatError(f"index format version {version}, expected {VERSION}")
    kind_code = flags >> 8
    if kind_code >= len(_KINDS) or not flags & FLAG_REBUILD:
        raise IndexFormatError(f"unsupported flags {flags:#x}")
    expect = _HEADER.size + 8 * sigma + 4 * (4 * n - 1)
    if n < 2 or len(data) != expect:
        raise IndexFormatError(f"payload size {len(data)} does not match header (expected {expect})")
    off = _HEADER.size

    def take(dtype: str, count: int) -> np.ndarray:
        nonlocal off
        arr = np.frombuffer(data, dtype=dtype, count=count, offset=off)
        off += arr.nbytes
        return arr

    alphabet = take("<i8", sigma).tolist()
    text = take("<u4", n)
    sa = take("<u4", n)
    isa = take("<u4", n)
    lcp = take("<u4", n - 1)
    ranks = np.arange(1, n + 1)
    if (text[-1] != 0 or (text[:-1] == 0).any() or text.max() > sigma
            or sorted(sa.tolist()) != ranks.tolist() or (isa[sa - 1] != ranks).any()):
        raise IndexFormatError("inconsistent index payload")
    idx = SuffixIndex(text.tolist(), alphabet, _KINDS[kind_code],
                      [0] + sa.tolist(), [0] + isa.tolist() + [n + 1], [0] + lcp.tolist())
    return Engine.from_index(idx, delta, seed, cfg)


# ---------------------------------------------------------------- commands

def _read_pattern(args) -> bytes:
    if args.pattern_file is not None:
        with open(args.pattern_file, "rb") as f:
            return f.read()
    if args.pattern is None:
        raise ValueError("give a pattern or --pattern-file")
    return os.fsencode(args.pattern)


def _print_positions(positions: list, count_only: bool) -> None:
    if count_only:
        print(len(positions))
    else:
        sys.stdout.write("".join(f"{x}\n" for x in positions))


def cmd_build(args) -> int:
    with open(args.text, "rb") as f:
        data = f.read()
    if not data:
        raise ValueError(f"{args.text}: empty input")
    engine = Engine.build(data, args.delta, args.seed)
    save_index(engine, args.out)
    mi = engine.mi
    g_bound, h_bound = mi.space_bounds()
    record = {"n": engine.idx.n, "sigma": engine.idx.sigma, "delta": engine.delta,
              "seed": args.seed, **mi.counts,
              "gamma_bound": round(g_bound, 3), "h_bound": round(h_bound, 3)}
    print(json.dumps(record))
    return EXIT_FOUND


def cmd_query(args) -> int:
    engine = load_index(args.index, PramConfig.from_env(args.p))
    with engine:
        positions = occurrences(engine.idx, engine.locate_exact(_read_pattern(args)))
    _print_positions(positions, args.count_only)
    return EXIT_FOUND if positions else EXIT_ABSENT


def cmd_approx(args) -> int:
    if args.k < 0:
        raise ValueError("-k must be >= 0")
    engine = load_index(args.index, PramConfig.from_env(args.p))
    with engine:
        positions = approximate(engine, _read_pattern(args), args.k, args.mode)
    _print_positions(positions, args.count_only)
    return EXIT_FOUND if positions else EXIT_ABSENT


def cmd_bench(args) -> int:
    engine = load_index(args.index, PramConfig.from_env(1))
    idx = engine.idx
    body = idx.text[:-1]
    m = min(args.m, len(body))
    rng = random.Random(args.seed)
    patterns = []
    for _ in range(args.trials):
        s = rng.randrange(len(body) - m + 1)
        patterns.append(body[s:s + m])
    for p in args.p:
        if not patterns:
            break
        engine.cfg = PramConfig(p)
        engine.close()
        stats = ProbeStats()
        schedule = None
        t0 = time.perf_counter()
        for pat in patterns:
            one = ProbeStats()
            engine.locate_exact(pat, p, one, encoded=True)
            stats.add(one)
            schedule = schedule or one.merges_per_round
        elapsed = time.perf_counter() - t0
        record = {"p": p, "m": m, "trials": len(patterns), "seconds": round(elapsed, 6),
                  "seconds_per_query": round(elapsed / len(patterns), 6)}
        record.update(stats.as_dict())
        # the schedule is the same for every query of length m
        record["rounds_per_query"] = stats.merge_rounds // len(patterns)
        record["merges_per_round"] = schedule or []
        print(json.dumps(record))
    engine.close()
    return EXIT_FOUND


def _p_list(text: str) -> list:
    out = [int(x) for x in text.split(",") if x.strip()]
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("expected a comma separated list of positive ints")
    return out


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="samurai", description="Parallel suffix array interval merging.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="index a file (raw bytes)")
    b.add_argument("text")
    b.add_argument("out")
    b.add_argument("--delta", type=int, default=None, help="sampling rate (default max(4, ceil(lg n)^2))")
    b.add_argument("--seed", type=int, default=0, help="hash seed")
    b.set_defaults(func=cmd_build)

    for name, func, help_ in (("query", cmd_query, "exact occurrences"),
                              ("approx", cmd_approx, "occurrences within k errors")):
        q = sub.add_parser(name, help=help_)
        q.add_argument("index")
        q.add_argument("pattern", nargs="?")
        q.add_argument("--pattern-file")
        q.add_argument("-p", type=_positive, default=None,
                       help="workers (default $SAMURAI_WORKERS or CPU count)")
        q.add_argument("--count-only", action="store_true")
        if name == "approx":
            q.add_argument("-k", type=int, default=1)
            q.add_argument("--mode", choices=MODES, default="difference")
        q.set_defaults(func=func)

    r = sub.add_parser("bench", help="time the merge-tree matcher")
    r.add_argument("index")
    r.add_argument("-p", type=_p_list, default=[1], help="worker counts, e.g. 1,2,4")
    r.add_argument("-m", type=_positive, default=1000, help="pattern length")
    r.add_argument("--trials", type=int, default=5)
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, IndexBuildError) as exc:
        print(f"samurai: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
