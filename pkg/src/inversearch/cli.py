"""Command-line interface: build, query, synth, serve."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import ingest
from .errors import InversearchError
from .pipeline import BuildConfig, build
from .ranker import DEFAULT_TOP_K, MODES, RankQuery, rank
from .service import ranked_list_payload, serve
from .store import DEFAULT_MAX_NODE_RECORDS, DEFAULT_VARIANCE_THRESHOLD, open_store
from .synth import SynthSpec, generate_synthetic
from .transform import DEFAULT_H


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inversearch",
        description="Search engine for inversely behaving financial instruments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a classification store from price CSVs")
    p.add_argument("--input", required=True, type=Path, help="directory of <SYMBOL>.csv files")
    p.add_argument("--store", required=True, type=Path, help="output store directory")
    p.add_argument("--h", type=int, default=DEFAULT_H, help="changes per time slice")
    p.add_argument("--variance-threshold", type=float, default=DEFAULT_VARIANCE_THRESHOLD,
                   help="max label variance for a node to be stored")
    p.add_argument("--max-node-records", type=int, default=DEFAULT_MAX_NODE_RECORDS,
                   help="max members for a node to be stored")
    p.add_argument("--min-node", type=int, default=2, help="min members per tree node")
    p.add_argument("--max-depth", type=int, default=25, help="max tree depth")
    p.add_argument("--fill", choices=["forward", "exclude"], default="forward",
                   help="missing-day policy during alignment")
    p.add_argument("--min-presence", type=float, default=ingest.DEFAULT_MIN_PRESENCE,
                   help="min fraction of instruments trading for a date to enter the calendar")
    p.add_argument("--jobs", type=int, default=1, help="parallel slice workers")

    p = sub.add_parser("query", help="rank instruments similar or inverse to a symbol")
    p.add_argument("--store", required=True, type=Path)
    p.add_argument("--symbol", required=True)
    p.add_argument("--mode", choices=list(MODES), default="inverse")
    p.add_argument("--top", type=int, default=DEFAULT_TOP_K)
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("synth", help="generate a synthetic universe with planted inverse pairs")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--instruments", required=True, type=int)
    p.add_argument("--days", required=True, type=int)
    p.add_argument("--planted-pairs", type=int, default=0)
    p.add_argument("--noise-sigma", type=float, default=0.0)

    p = sub.add_parser("serve", help="serve the HTTP query API over a store")
    p.add_argument("--store", required=True, type=Path)
    p.add_argument("--bind", default="127.0.0.1:8000")
    p.add_argument("--ui", type=Path, default=None, help="optional static UI directory to serve at /")

    return parser


def _cmd_build(args: argparse.Namespace) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    config = BuildConfig(
        input_dir=args.input,
        store_dir=args.store,
        h=args.h,
        variance_threshold=args.variance_threshold,
        max_node_records=args.max_node_records,
        min_node_records=args.min_node,
        max_depth=args.max_depth,
        fill_policy=ingest.FORWARD_FILL if args.fill == "forward" else ingest.EXCLUDE,
        min_presence=args.min_presence,
        jobs=args.jobs,
    )
    manifest = build(config)
    print(
        f"built {args.store}: {manifest.tree_count} trees over {manifest.k_max} slices, "
        f"{manifest.node_count} stored nodes, {manifest.record_count} records"
    )
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    store = open_store(args.store)
    result = rank(store, RankQuery(symbol=args.symbol.strip().upper(), mode=args.mode, top_k=args.top))
    if args.format == "json":
        print(json.dumps(ranked_list_payload(result), indent=2, sort_keys=True))
        return 0
    print(f"{args.mode} matches for {result.symbol} ({result.nodes_visited} nodes visited)")
    if not result.entries:
        print("  (no co-occurring instruments)")
        return 0
    width = max(len(e.symbol) for e in result.entries)
    print(f"  {'rank':>4}  {'symbol':<{width}}  score")
    for e in result.entries:
        print(f"  {e.rank:>4}  {e.symbol:<{width}}  {e.score}")
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        seed=args.seed,
        n_instruments=args.instruments,
        n_days=args.days,
        planted_pairs=args.planted_pairs,
        noise_sigma=args.noise_sigma,
    )
    files = generate_synthetic(spec, args.out)
    print(f"wrote {len(files) - 1} instrument files and truth.json to {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(args.store, args.bind, ui_dir=args.ui)
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "query": _cmd_query,
    "synth": _cmd_synth,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InversearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
