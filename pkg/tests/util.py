"""Shared test helpers: tiny universes, hand-built stores, independent oracles."""

from __future__ import annotations

from datetime import date, timedelta

import numpy as np

from inversearch.ingest import AlignedUniverse, TradingCalendar
from inversearch.store import NodeMeta, NodeRecord, StoreManifest, write_store
from inversearch.transform import SliceTrainingSet


def make_calendar(n: int, start: date = date(2011, 1, 3)) -> TradingCalendar:
    return TradingCalendar(days=tuple(start + timedelta(days=i) for i in range(n)))


def make_universe(series: dict[str, list[float | None]]) -> AlignedUniverse:
    """Aligned universe straight from per-symbol price lists; None = missing."""
    n = len(next(iter(series.values())))
    assert all(len(v) == n for v in series.values())
    calendar = make_calendar(n)
    universe = AlignedUniverse(calendar=calendar)
    for symbol, prices in series.items():
        slots = np.array(
            [np.nan if p is None else float(p) for p in prices], dtype=np.float64
        )
        universe.prices[symbol] = slots
    return universe


def make_training_set(
    features,
    labels,
    symbols: list[str] | None = None,
    polarity: np.ndarray | None = None,
    slice_index: int = 1,
) -> SliceTrainingSet:
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    n = features.shape[0]
    if symbols is None:
        symbols = [f"T{i:03d}" for i in range(n)]
    if polarity is None:
        polarity = np.zeros(n, dtype=np.uint8)
    return SliceTrainingSet(
        slice_index=slice_index,
        symbols=symbols,
        polarity=polarity,
        features=features,
        labels=labels,
    )


def make_manifest(
    metas: list[NodeMeta],
    records: list[NodeRecord],
    symbols: list[str],
    h: int = 5,
    k_max: int | None = None,
) -> StoreManifest:
    if k_max is None:
        k_max = max((m.slice_index for m in metas), default=1)
    return StoreManifest(
        h=h,
        k_max=k_max,
        variance_threshold=1e-4,
        max_node_records=50,
        min_node_records=2,
        max_depth=25,
        min_variance_reduction=0.0,
        calendar_start="2011-01-03",
        calendar_end="2011-12-30",
        calendar_days=k_max * h + 1,
        instrument_count=len(symbols),
        symbols=sorted(symbols),
        tree_count=k_max,
        node_count=len(metas),
        record_count=len(records),
        config_hash="test",
    )


def write_toy_store(path, node_map: dict[tuple[int, int], list[tuple[str, str]]],
                    symbols: list[str] | None = None):
    """Build a store from an explicit {(slice, node): [(symbol, polarity)]} map."""
    metas: list[NodeMeta] = []
    records: list[NodeRecord] = []
    seen: set[str] = set()
    for (s, n), members in sorted(node_map.items()):
        metas.append(NodeMeta(s, n, len(members), 0.0))
        for sym, pol in members:
            records.append(NodeRecord(s, n, sym, pol))
            seen.add(sym)
    manifest = make_manifest(metas, records, symbols or sorted(seen))
    return write_store(manifest, metas, records, path)


def brute_force_best_split(X, y, min_variance_reduction: float = 0.0):
    """Independent split oracle: full enumeration, definitional variances.

    Scans every (feature, midpoint-between-distinct-values) candidate,
    scoring reduction = var(parent) - weighted var(children) with np.var,
    keeping the first strict maximum (lowest feature, lowest threshold).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    if n < 2 or bool(np.all(y == y[0])):
        return None
    parent = float(np.var(y))
    best = None
    best_red = -np.inf
    for f in range(X.shape[1]):
        vals = np.unique(X[:, f])
        for a, b in zip(vals, vals[1:]):
            thr = float((a + b) / 2)
            if not thr < b:  # 1-ulp neighbors: midpoint may round up
                thr = float(a)
            mask = X[:, f] <= thr
            n_left = int(mask.sum())
            weighted = (n_left * np.var(y[mask]) + (n - n_left) * np.var(y[~mask])) / n
            red = parent - float(weighted)
            if red > best_red:
                best_red = red
                best = (f + 1, thr, red)
    if best is None or best[2] <= min_variance_reduction:
        return None
    return best


def walk_internal_nodes(tree):
    for node in tree.nodes:
        if node.split is not None:
            yield node


def split_mismatches(features, labels, params) -> list:
    """Train a tree and compare every node's split decision with the oracle.

    Returns a list of (node_id, greedy_split, oracle_split) disagreements;
    leaves count as disagreements only when no stopping rule justifies them.
    """
    from inversearch.tree import train_tree

    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    tree = train_tree(make_training_set(features, labels), params)
    mismatches = []
    for node in tree.nodes:
        members = node.member_indices
        X, y = features[members], labels[members]
        oracle = brute_force_best_split(X, y, params.min_variance_reduction)
        if node.split is not None:
            if oracle is None or (oracle[0], oracle[1]) != node.split:
                mismatches.append((node.node_id, node.split, oracle))
        else:
            if node.depth >= params.max_depth:
                continue
            if members.size < 2 * params.min_node_records:
                continue
            if oracle is None:
                continue
            mask = X[:, oracle[0] - 1] <= oracle[1]
            if min(mask.sum(), (~mask).sum()) < params.min_node_records:
                continue
            mismatches.append((node.node_id, None, oracle))
    return mismatches


def exact_reduction(X, y, feature_1based: int, threshold: float):
    """Variance reduction of one split in exact rational arithmetic."""
    from fractions import Fraction

    n = X.shape[0]
    mask = X[:, feature_1based - 1] <= threshold
    ys = [Fraction(float(v)) for v in y]
    total = sum(ys)
    s_left = sum(v for v, m in zip(ys, mask) if m)
    n_left = int(mask.sum())
    if n_left == 0 or n_left == n:
        return None
    s_right = total - s_left
    score = s_left * s_left / n_left + s_right * s_right / (n - n_left)
    return (score - total * total / n) / n


def exact_best_reduction(X, y):
    """Largest exact variance reduction over every (feature, midpoint) pair."""
    best = None
    for f in range(X.shape[1]):
        vals = np.unique(X[:, f])
        for a, b in zip(vals, vals[1:]):
            thr = float((a + b) / 2)
            if not thr < b:
                thr = float(a)
            red = exact_reduction(X, y, f + 1, thr)
            if red is not None and (best is None or red > best):
                best = red
    return best


def random_toy_store(path, rng):
    """Small random-but-valid store for oracle comparisons."""
    from inversearch.store import open_store

    symbols = [f"SYM{j:02d}" for j in range(int(rng.integers(4, 10)))]
    node_map = {}
    for s in range(1, int(rng.integers(2, 4)) + 1):
        for n in range(int(rng.integers(1, 7))):
            pool = [(sym, pol) for sym in symbols for pol in ("O", "I")]
            size = int(rng.integers(2, min(7, len(pool))))
            take = rng.choice(len(pool), size=size, replace=False)
            node_map[(s, n)] = [pool[t] for t in take]
    write_toy_store(path, node_map, symbols=symbols)
    return open_store(path), symbols
