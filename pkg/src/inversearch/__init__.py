"""Inverse-behavior search engine for daily price series.

Builds a classification store from end-of-day prices (change signals,
mirrored twins, per-slice regression trees, small low-variance nodes) and
ranks instruments by how often they co-occur in those nodes with a query
symbol, either directly or inversely.
"""

from .errors import (
    BuildError,
    CalendarError,
    DegenerateSliceError,
    InputFormatError,
    InversearchError,
    StoreCorruptError,
    StoreError,
    UnknownNodeError,
    UnknownSymbolError,
)
from .ingest import (
    AlignedUniverse,
    PriceSeries,
    TradingCalendar,
    align,
    build_calendar,
    load_price_file,
    load_universe,
    max_slice_index,
    slice_eligibility,
)
from .pipeline import BuildConfig, build
from .ranker import RankedList, RankEntry, RankQuery, rank, rank_bruteforce
from .store import (
    NodeMeta,
    NodeRecord,
    NodeStore,
    StoreManifest,
    extract_node_records,
    open_store,
    write_store,
)
from .synth import SynthSpec, generate_synthetic
from .transform import (
    ChangeSeries,
    LabeledInstance,
    SliceTrainingSet,
    build_training_set,
    make_inverse,
    self_label,
    slice_changes,
    to_changes,
    training_set_from_changes,
)
from .tree import Tree, TreeNode, TreeParams, best_split, node_members, train_tree

__version__ = "0.1.0"

__all__ = [
    "AlignedUniverse",
    "BuildConfig",
    "BuildError",
    "CalendarError",
    "ChangeSeries",
    "DegenerateSliceError",
    "InputFormatError",
    "InversearchError",
    "LabeledInstance",
    "NodeMeta",
    "NodeRecord",
    "NodeStore",
    "PriceSeries",
    "RankEntry",
    "RankQuery",
    "RankedList",
    "SliceTrainingSet",
    "StoreCorruptError",
    "StoreError",
    "StoreManifest",
    "SynthSpec",
    "TradingCalendar",
    "Tree",
    "TreeNode",
    "TreeParams",
    "UnknownNodeError",
    "UnknownSymbolError",
    "align",
    "best_split",
    "build",
    "build_calendar",
    "build_training_set",
    "extract_node_records",
    "generate_synthetic",
    "load_price_file",
    "load_universe",
    "make_inverse",
    "max_slice_index",
    "node_members",
    "open_store",
    "rank",
    "rank_bruteforce",
    "self_label",
    "slice_changes",
    "slice_eligibility",
    "to_changes",
    "train_tree",
    "training_set_from_changes",
    "write_store",
]
