"""End-to-end build orchestration: files in, classification store out.

Loads every price file, builds the shared calendar, aligns, then for each
slice trains a tree and keeps its small low-variance nodes. Slice tasks
are pure and run on a thread pool; results are merged in slice order so
the written store is byte-identical regardless of parallelism.
"""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import ingest, transform
from .errors import BuildError
from .store import (
    DEFAULT_MAX_NODE_RECORDS,
    DEFAULT_VARIANCE_THRESHOLD,
    NodeMeta,
    NodeRecord,
    StoreManifest,
    extract_node_records,
    write_store,
)
from .tree import TreeParams, train_tree

logger = logging.getLogger(__name__)


@dataclass
class BuildConfig:
    input_dir: Path
    store_dir: Path
    h: int = transform.DEFAULT_H
    variance_threshold: float = DEFAULT_VARIANCE_THRESHOLD
    max_node_records: int = DEFAULT_MAX_NODE_RECORDS
    min_node_records: int = 2
    max_depth: int = 25
    min_variance_reduction: float = 0.0
    fill_policy: str = ingest.FORWARD_FILL
    min_presence: float = ingest.DEFAULT_MIN_PRESENCE
    max_fill_gap: int = ingest.DEFAULT_MAX_FILL_GAP
    jobs: int = 1

    def tree_params(self) -> TreeParams:
        return TreeParams(
            min_node_records=self.min_node_records,
            max_depth=self.max_depth,
            min_variance_reduction=self.min_variance_reduction,
        )

    def config_hash(self) -> str:
        # Semantic parameters only: paths and parallelism must not change output.
        payload = {
            "h": self.h,
            "variance_threshold": self.variance_threshold,
            "max_node_records": self.max_node_records,
            "min_node_records": self.min_node_records,
            "max_depth": self.max_depth,
            "min_variance_reduction": self.min_variance_reduction,
            "fill_policy": self.fill_policy,
            "min_presence": self.min_presence,
            "max_fill_gap": self.max_fill_gap,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()


def build(config: BuildConfig) -> StoreManifest:
    """Run ingest -> transform -> tree -> store for every slice, write the store."""
    all_series = ingest.load_universe(config.input_dir)
    if not all_series:
        raise BuildError(f"no *.csv input files in {config.input_dir}")
    calendar = ingest.build_calendar(all_series, config.min_presence)
    universe = ingest.align(all_series, calendar, config.fill_policy, config.max_fill_gap)
    n = len(calendar)
    k_max = ingest.max_slice_index(n, config.h)
    if k_max < 1:
        raise BuildError(f"calendar of {n} days has no complete slice of h={config.h} changes")

    changes = {s: transform.to_changes(universe, s) for s in universe.symbols}
    params = config.tree_params()

    def run_slice(k: int) -> tuple[list[NodeMeta], list[NodeRecord]] | None:
        training_set = transform.training_set_from_changes(changes, k, config.h)
        eligible = len(training_set) // 2
        if eligible < 2:
            logger.info("slice %d: skipped (%d eligible instrument(s))", k, eligible)
            return None
        tree = train_tree(training_set, params)
        metas, records = extract_node_records(
            tree, config.variance_threshold, config.max_node_records
        )
        logger.info(
            "slice %d: %d instances, %d tree nodes, %d stored nodes, %d records",
            k, len(training_set), len(tree), len(metas), len(records),
        )
        return metas, records

    slice_indices = list(range(1, k_max + 1))
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(run_slice, slice_indices))
    else:
        results = [run_slice(k) for k in slice_indices]

    all_metas: list[NodeMeta] = []
    all_records: list[NodeRecord] = []
    tree_count = 0
    for result in results:  # merged in ascending slice order
        if result is None:
            continue
        tree_count += 1
        all_metas.extend(result[0])
        all_records.extend(result[1])
    if tree_count == 0:
        raise BuildError("no slice had at least 2 eligible instruments")

    manifest = StoreManifest(
        h=config.h,
        k_max=k_max,
        variance_threshold=config.variance_threshold,
        max_node_records=config.max_node_records,
        min_node_records=config.min_node_records,
        max_depth=config.max_depth,
        min_variance_reduction=config.min_variance_reduction,
        calendar_start=calendar.days[0].isoformat(),
        calendar_end=calendar.days[-1].isoformat(),
        calendar_days=n,
        instrument_count=len(universe),
        symbols=universe.symbols,
        tree_count=tree_count,
        node_count=len(all_metas),
        record_count=len(all_records),
        config_hash=config.config_hash(),
    )
    write_store(manifest, all_metas, all_records, config.store_dir)
    logger.info(
        "store written to %s: %d trees, %d nodes, %d records",
        config.store_dir, tree_count, len(all_metas), len(all_records),
    )
    return manifest
