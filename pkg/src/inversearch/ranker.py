"""Similarity ranking by node co-occurrence counting.

A query walks every stored node containing the query symbol's original
record; each co-member increments its instrument's counter, counting
original-polarity co-members in direct mode and inverse-polarity ones in
inverse mode. Instruments are returned in descending counter order (ties
by symbol ascending), so a high inverse-mode counter marks an instrument
that repeatedly landed in the same quiet tree nodes as the query's
mirrored signal.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import StoreError, UnknownSymbolError
from .store import NodeStore

DIRECT = "direct"
INVERSE_MODE = "inverse"
MODES = (DIRECT, INVERSE_MODE)

DEFAULT_TOP_K = 20

BRUTEFORCE_MAX_RECORDS = 100_000


@dataclass(frozen=True)
class RankQuery:
    symbol: str
    mode: str = INVERSE_MODE
    top_k: int = DEFAULT_TOP_K

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")


@dataclass(frozen=True)
class RankEntry:
    rank: int  # 1-based, contiguous
    symbol: str
    score: int  # raw co-occurrence counter


@dataclass(frozen=True)
class RankedList:
    symbol: str
    mode: str
    top_k: int
    nodes_visited: int
    entries: tuple[RankEntry, ...]


def _rank_from_counters(query: RankQuery, counters: dict[str, int], nodes_visited: int) -> RankedList:
    ordered = sorted(counters.items(), key=lambda kv: (-kv[1], kv[0]))[: query.top_k]
    entries = tuple(
        RankEntry(rank=i + 1, symbol=s, score=c) for i, (s, c) in enumerate(ordered)
    )
    return RankedList(
        symbol=query.symbol,
        mode=query.mode,
        top_k=query.top_k,
        nodes_visited=nodes_visited,
        entries=entries,
    )


def rank(store: NodeStore, query: RankQuery) -> RankedList:
    """Rank instruments by co-occurrence with the query symbol's original record.

    Raises UnknownSymbolError for symbols outside the store's universe; a
    known symbol appearing in no stored node yields an empty ranking.
    """
    if not store.has_symbol(query.symbol):
        raise UnknownSymbolError(f"unknown symbol {query.symbol!r}")
    wanted = "O" if query.mode == DIRECT else "I"
    counters: dict[str, int] = {}
    nodes = store.query_nodes_containing(query.symbol, "O")
    for slice_index, node_id in nodes:
        for symbol, polarity in store.node_members(slice_index, node_id):
            if symbol == query.symbol or polarity != wanted:
                continue
            counters[symbol] = counters.get(symbol, 0) + 1
    return _rank_from_counters(query, counters, len(nodes))


def rank_bruteforce(store: NodeStore, query: RankQuery) -> RankedList:
    """Same ranking recomputed by a naive linear scan of records.tsv.

    Independent of the store's in-memory index; intended as a testing
    oracle and guarded to small stores.
    """
    if store.record_count() > BRUTEFORCE_MAX_RECORDS:
        raise StoreError(
            f"brute-force ranking is limited to {BRUTEFORCE_MAX_RECORDS} records, "
            f"store has {store.record_count()}"
        )
    if not store.has_symbol(query.symbol):
        raise UnknownSymbolError(f"unknown symbol {query.symbol!r}")
    rows = _read_records(store.path)
    query_nodes = sorted(
        {(s, n) for s, n, sym, pol in rows if sym == query.symbol and pol == "O"}
    )
    wanted = "O" if query.mode == DIRECT else "I"
    counters: dict[str, int] = {}
    for qs, qn in query_nodes:
        for s, n, sym, pol in rows:
            if s != qs or n != qn or sym == query.symbol or pol != wanted:
                continue
            counters[sym] = counters.get(sym, 0) + 1
    return _rank_from_counters(query, counters, len(query_nodes))


def _read_records(path: Path) -> list[tuple[int, int, str, str]]:
    lines = (path / "records.tsv").read_text(encoding="utf-8").splitlines()
    rows = []
    for line in lines[1:]:
        s, n, sym, pol = line.split("\t")
        rows.append((int(s), int(n), sym, pol))
    return rows
