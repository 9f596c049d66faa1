"""Deterministic variance-reduction regression trees, one per slice.

Greedy binary splitting on the h change features against the continuous
self-label: every candidate threshold is a midpoint between consecutive
distinct sorted feature values, the split minimizing count-weighted child
label variance wins, and ties resolve to the lowest feature index then the
lowest threshold. Trees exist to group their own training records, not to
predict; every node keeps its member set and label variance so small
low-variance nodes can later be persisted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import best_split_scan, label_mean_var
from .errors import DegenerateSliceError, UnknownNodeError
from .transform import INVERSE, ORIGINAL, SliceTrainingSet


@dataclass(frozen=True)
class TreeParams:
    min_node_records: int = 2
    max_depth: int = 25
    min_variance_reduction: float = 0.0

    def __post_init__(self) -> None:
        if self.min_node_records < 2:
            raise ValueError("min_node_records must be >= 2")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.min_variance_reduction < 0.0:
            raise ValueError("min_variance_reduction must be >= 0")


@dataclass(eq=False)
class TreeNode:
    node_id: int  # pre-order position, root = 0
    depth: int
    member_indices: np.ndarray  # ascending indices into the slice's instances
    label_variance: float
    split: tuple[int, float] | None = None  # (feature 1..h, threshold); left <= threshold
    left_id: int | None = None
    right_id: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.split is None


@dataclass(eq=False)
class Tree:
    slice_index: int
    nodes: list[TreeNode]
    params: TreeParams
    symbols: list[str]  # instance identities, shared with the training set
    polarity: np.ndarray

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    def __len__(self) -> int:
        return len(self.nodes)


def best_split(
    features: np.ndarray, labels: np.ndarray, min_variance_reduction: float = 0.0
) -> tuple[int, float, float] | None:
    """Best (feature 1..h, threshold, variance_reduction) for one node.

    Returns None when no candidate threshold exists (all feature vectors
    identical), when all labels are equal, or when the best reduction does
    not strictly exceed min_variance_reduction.
    """
    X = np.ascontiguousarray(features, dtype=np.float64)
    y = np.ascontiguousarray(labels, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ValueError("features must be (n, h) with one label per row")
    if X.shape[0] < 2:
        return None
    if np.all(y == y[0]):
        return None
    f, thr, reduction = best_split_scan(X, y)
    if f < 0 or reduction <= min_variance_reduction:
        return None
    return int(f) + 1, float(thr), float(reduction)


def train_tree(training_set: SliceTrainingSet, params: TreeParams | None = None) -> Tree:
    """Grow one tree by recursive greedy splitting; node ids are pre-order.

    A node splits only while shallower than max_depth, holding at least
    2 * min_node_records members, and only if the unconstrained best split
    leaves min_node_records members on each side.
    """
    params = params or TreeParams()
    n = len(training_set)
    if n < 2:
        raise DegenerateSliceError(
            f"slice {training_set.slice_index}: {n} instance(s), need at least 2"
        )
    X = training_set.features
    y = training_set.labels
    nodes: list[TreeNode] = []

    def grow(members: np.ndarray, depth: int) -> int:
        node = TreeNode(
            node_id=len(nodes),
            depth=depth,
            member_indices=members,
            label_variance=label_mean_var(np.ascontiguousarray(y[members]))[1],
        )
        nodes.append(node)
        if depth >= params.max_depth or members.size < 2 * params.min_node_records:
            return node.node_id
        cand = best_split(X[members], y[members], params.min_variance_reduction)
        if cand is None:
            return node.node_id
        feature, threshold, _ = cand
        mask = X[members, feature - 1] <= threshold
        n_left = int(mask.sum())
        if n_left < params.min_node_records or members.size - n_left < params.min_node_records:
            return node.node_id
        node.split = (feature, threshold)
        node.left_id = grow(members[mask], depth + 1)
        node.right_id = grow(members[~mask], depth + 1)
        return node.node_id

    grow(np.arange(n, dtype=np.int64), 0)
    return Tree(
        slice_index=training_set.slice_index,
        nodes=nodes,
        params=params,
        symbols=training_set.symbols,
        polarity=training_set.polarity,
    )


def node_members(tree: Tree, node_id: int) -> list[tuple[str, str]]:
    """(symbol, polarity) pairs of one node, in training-set order."""
    if not 0 <= node_id < len(tree.nodes):
        raise UnknownNodeError(f"tree for slice {tree.slice_index} has no node {node_id}")
    return [
        (tree.symbols[i], INVERSE if tree.polarity[i] else ORIGINAL)
        for i in tree.nodes[node_id].member_indices
    ]
