"""Command-line harness: build, bench, stats, and bounds over a corpus.

A corpus is a newline-separated file of byte keywords. Lines are kept
verbatim apart from a stripped trailing CR; blank lines and lines
containing NUL are skipped and counted. Reports are flat key/value
mappings printed as JSON or TSV.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .analysis import decomposition_bounds, shape_stats
from .core import Config, DynPdtError, EmptyCorpus, GROUP_SIZES, LABEL_MAPS, REPRS
from .dictionary import Dictionary
from .hashing import SplitMix64


def load_corpus(path, dedupe: bool = False) -> tuple[list[bytes], dict]:
    data = Path(path).read_bytes()
    keys: list[bytes] = []
    blank = invalid = dup = 0
    seen: set[bytes] | None = set() if dedupe else None
    for line in data.split(b"\n"):
        if line.endswith(b"\r"):
            line = line[:-1]
        if not line:
            blank += 1
            continue
        if 0 in line:
            invalid += 1
            continue
        if seen is not None:
            if line in seen:
                dup += 1
                continue
            seen.add(line)
        keys.append(line)
    counts = {"lines_blank": blank, "lines_invalid": invalid, "lines_duplicate": dup}
    return keys, counts


def shuffle_keys(keys: list[bytes], seed: int) -> None:
    """In-place Fisher-Yates driven by a seeded generator."""
    rng = SplitMix64(seed)
    for i in range(len(keys) - 1, 0, -1):
        j = rng.below(i + 1)
        keys[i], keys[j] = keys[j], keys[i]


def _config(args) -> Config:
    return Config(
        trie_repr=args.repr,
        label_map=args.nlm,
        offset_limit=args.offset_limit,
        group_size=args.ell,
        initial_capacity=args.capacity,
    )


def _build(keys: list[bytes], config: Config) -> tuple[Dictionary, int, int]:
    d = Dictionary(config)
    inserted = 0
    t0 = time.perf_counter_ns()
    for idx, key in enumerate(keys):
        if d.insert(key, idx):
            inserted += 1
    elapsed = time.perf_counter_ns() - t0
    return d, inserted, elapsed


def _base_report(args, keys: list[bytes], counts: dict) -> dict:
    rep = {
        "command": args.command,
        "corpus": str(args.corpus),
        "n_keys": len(keys),
        "repr": args.repr,
        "nlm": args.nlm,
        "offset_limit": args.offset_limit,
        "group_size": args.ell,
        "initial_capacity": args.capacity,
        "seed": args.seed,
    }
    rep.update(counts)
    return rep


def _built_report(rep: dict, d: Dictionary, inserted: int, elapsed: int, n: int) -> None:
    rep.update({
        "n_unique": inserted,
        "build_ns_per_key": elapsed // n,
        "node_count": d.node_count,
        "capacity": d.capacity,
        "load_factor": round(d.node_count / d.capacity, 4),
        "growth_events": d.growth_events,
        "memory_bytes": d.memory_bytes(),
        "bytes_per_key": round(d.memory_bytes() / inserted, 2),
    })


def run_build(args) -> tuple[dict, int]:
    keys, counts = load_corpus(args.corpus, args.dedupe)
    if not keys:
        raise EmptyCorpus(f"{args.corpus} holds no usable lines")
    if args.seed is not None:
        shuffle_keys(keys, args.seed)
    d, inserted, elapsed = _build(keys, _config(args))
    rep = _base_report(args, keys, counts)
    _built_report(rep, d, inserted, elapsed, len(keys))
    expected: dict[bytes, int] = {}
    for idx, key in enumerate(keys):
        expected.setdefault(key, idx)
    failures = sum(1 for key, idx in expected.items() if d.lookup(key) != idx)
    rep["verify_failures"] = failures
    return rep, 0 if failures == 0 else 1


def _unused_byte(keys: list[bytes]) -> int | None:
    present: set[int] = set()
    for key in keys:
        present.update(key)
        if len(present) >= 255:
            return None
    for b in range(1, 256):
        if b not in present:
            return b
    return None


def run_bench(args) -> tuple[dict, int]:
    keys, counts = load_corpus(args.corpus, args.dedupe)
    if not keys:
        raise EmptyCorpus(f"{args.corpus} holds no usable lines")
    if args.seed is not None:
        shuffle_keys(keys, args.seed)
    d, inserted, elapsed = _build(keys, _config(args))
    rep = _base_report(args, keys, counts)
    _built_report(rep, d, inserted, elapsed, len(keys))

    sample = keys[:min(args.queries, len(keys))]
    ub = _unused_byte(keys)
    if ub is None:
        misses = [key + b"\x01" for key in sample]
    else:
        tail = bytes((ub,))
        misses = [key[:-1] + tail for key in sample]

    lookup = d.lookup
    best_hit = best_miss = None
    hit_found = miss_found = 0
    for _ in range(args.repeats):
        t0 = time.perf_counter_ns()
        found = 0
        for key in sample:
            if lookup(key) is not None:
                found += 1
        dt = time.perf_counter_ns() - t0
        hit_found = found
        best_hit = dt if best_hit is None or dt < best_hit else best_hit
        t0 = time.perf_counter_ns()
        found = 0
        for key in misses:
            if lookup(key) is not None:
                found += 1
        dt = time.perf_counter_ns() - t0
        miss_found = found
        best_miss = dt if best_miss is None or dt < best_miss else best_miss
    rep.update({
        "queries": len(sample),
        "repeats": args.repeats,
        "hit_ns_per_op": best_hit // len(sample),
        "miss_ns_per_op": best_miss // len(sample),
        "hit_rate": round(hit_found / len(sample), 6),
        "miss_hit_rate": round(miss_found / len(sample), 6),
    })
    return rep, 0


def run_stats(args) -> tuple[dict, int]:
    keys, counts = load_corpus(args.corpus, args.dedupe)
    if not keys:
        raise EmptyCorpus(f"{args.corpus} holds no usable lines")
    if args.seed is not None:
        shuffle_keys(keys, args.seed)
    d, inserted, elapsed = _build(keys, _config(args))
    rep = _base_report(args, keys, counts)
    _built_report(rep, d, inserted, elapsed, len(keys))
    st = shape_stats(d)
    rep.update({
        "step_count": st.step_count,
        "steps_pct": round(st.steps_pct, 6),
        "nonstep_count": st.nonstep_count,
        "ave_height": round(st.ave_height, 4),
        "ave_nll": round(st.ave_nll, 4),
    })
    return rep, 0


def run_bounds(args) -> tuple[dict, int]:
    keys, counts = load_corpus(args.corpus, dedupe=True)
    if not keys:
        raise EmptyCorpus(f"{args.corpus} holds no usable lines")
    n, lo, hi = decomposition_bounds(keys)
    rep = {
        "command": args.command,
        "corpus": str(args.corpus),
        "n_keys": n,
        "height_sum_min": lo,
        "height_sum_max": hi,
        "ave_height_min": round(lo / n, 4),
        "ave_height_max": round(hi / n, 4),
    }
    rep.update(counts)
    return rep, 0


def emit(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True)
    return "\n".join(f"{k}\t{rep[k]}" for k in sorted(rep))


def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("corpus", help="newline-separated keyword file")
    shared.add_argument("--repr", choices=REPRS, default="cbt",
                        help="trie backend (default: cbt)")
    shared.add_argument("--nlm", choices=LABEL_MAPS, default="slm",
                        help="label map layout (default: slm)")
    shared.add_argument("--lambda", dest="offset_limit", type=int, default=64,
                        metavar="N", help="edge offset limit (default: 64)")
    shared.add_argument("--ell", type=int, choices=GROUP_SIZES, default=16,
                        help="sparse label map group size (default: 16)")
    shared.add_argument("--capacity", type=int, default=1 << 16, metavar="N",
                        help="initial table slots, power of two (default: 65536)")
    shared.add_argument("--seed", type=int, default=None, metavar="N",
                        help="shuffle keys with this seed before building")
    shared.add_argument("--dedupe", action="store_true",
                        help="drop repeated keywords, keeping the first")
    shared.add_argument("--format", choices=("json", "tsv"), default="json",
                        help="report format (default: json)")

    top = argparse.ArgumentParser(prog="dynpdt",
                                  description="dynamic keyword dictionary harness")
    sub = top.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[shared],
                   help="insert the corpus and verify every keyword")
    bench = sub.add_parser("bench", parents=[shared],
                           help="time hit and miss lookups after a build")
    bench.add_argument("--queries", type=int, default=1_000_000, metavar="N",
                       help="max sampled queries (default: 1000000)")
    bench.add_argument("--repeats", type=int, default=3, metavar="N",
                       help="timing passes, best taken (default: 3)")
    sub.add_parser("stats", parents=[shared],
                   help="build and census the trie shape")
    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("corpus", help="newline-separated keyword file")
    bounds.add_argument("--format", choices=("json", "tsv"), default="json",
                        help="report format (default: json)")
    sub.add_parser("bounds", parents=[bounds],
                   help="decomposition band for the average height")
    return top


_RUNNERS = {
    "build": run_build,
    "bench": run_bench,
    "stats": run_stats,
    "bounds": run_bounds,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        rep, rc = _RUNNERS[args.command](args)
    except (OSError, DynPdtError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(emit(rep, args.format))
    return rc


if __name__ == "__main__":
    sys.exit(main())
