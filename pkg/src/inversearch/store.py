"""Flat-file classification store: filtered node memberships for all slices.

Tree nodes that are small (2..max_node_records members) and quiet
(label variance <= variance_threshold) are flattened into one membership
table across all slices. The on-disk layout (format version 1) is three
files in one directory, all byte-deterministic for identical inputs:

  manifest.json  build parameters, counts, instrument universe, checksums
  nodes.tsv      slice / node / count / variance (shortest round-trip repr)
  records.tsv    slice / node / symbol / polarity (O or I), fully sorted

Queries run against an in-memory index built once at open time.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import StoreCorruptError, StoreError, UnknownNodeError
from .tree import Tree

FORMAT_VERSION = 1

DEFAULT_VARIANCE_THRESHOLD = 1e-4
DEFAULT_MAX_NODE_RECORDS = 50

_NODES_HEADER = "slice\tnode\tcount\tvariance"
_RECORDS_HEADER = "slice\tnode\tsymbol\tpolarity"


class NodeRecord(NamedTuple):
    slice_index: int
    node_id: int
    symbol: str
    polarity: str  # "O" | "I"


class NodeMeta(NamedTuple):
    slice_index: int
    node_id: int
    record_count: int
    label_variance: float


@dataclass
class StoreManifest:
    """Everything needed to interpret and sanity-check the two tables."""

    h: int
    k_max: int
    variance_threshold: float
    max_node_records: int
    min_node_records: int
    max_depth: int
    min_variance_reduction: float
    calendar_start: str
    calendar_end: str
    calendar_days: int
    instrument_count: int
    symbols: list[str]
    tree_count: int
    node_count: int
    record_count: int
    config_hash: str
    format_version: int = FORMAT_VERSION
    checksums: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "StoreManifest":
        data = json.loads(text)
        version = data.get("format_version")
        if version != FORMAT_VERSION:
            raise StoreError(f"unsupported store format version {version!r}")
        return cls(**data)


def extract_node_records(
    tree: Tree,
    variance_threshold: float = DEFAULT_VARIANCE_THRESHOLD,
    max_node_records: int = DEFAULT_MAX_NODE_RECORDS,
) -> tuple[list[NodeMeta], list[NodeRecord]]:
    """Keep every node (internal or leaf) that is small and low-variance.

    A node passes when 2 <= member count <= max_node_records and its label
    variance is <= variance_threshold; each member becomes one record.
    Output order is node_id, then member (training-set) order.
    """
    metas: list[NodeMeta] = []
    records: list[NodeRecord] = []
    for node in tree.nodes:
        count = int(node.member_indices.size)
        if count < 2 or count > max_node_records:
            continue
        if node.label_variance > variance_threshold:
            continue
        metas.append(
            NodeMeta(tree.slice_index, node.node_id, count, float(node.label_variance))
        )
        for i in node.member_indices:
            records.append(
                NodeRecord(
                    tree.slice_index,
                    node.node_id,
                    tree.symbols[i],
                    "I" if tree.polarity[i] else "O",
                )
            )
    return metas, records


def write_store(
    manifest: StoreManifest,
    metas: Iterable[NodeMeta],
    records: Iterable[NodeRecord],
    path: str | Path,
) -> Path:
    """Write the three store files; byte-identical for identical inputs."""
    metas = sorted(metas, key=lambda m: (m.slice_index, m.node_id))
    records = sorted(records)
    if manifest.node_count != len(metas):
        raise StoreError(
            f"manifest node_count {manifest.node_count} != {len(metas)} metas"
        )
    if manifest.record_count != len(records):
        raise StoreError(
            f"manifest record_count {manifest.record_count} != {len(records)} records"
        )
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)

    nodes_lines = [_NODES_HEADER]
    nodes_lines += [
        f"{m.slice_index}\t{m.node_id}\t{m.record_count}\t{float(m.label_variance)!r}"
        for m in metas
    ]
    nodes_bytes = ("\n".join(nodes_lines) + "\n").encode("utf-8")

    records_lines = [_RECORDS_HEADER]
    records_lines += [
        f"{r.slice_index}\t{r.node_id}\t{r.symbol}\t{r.polarity}" for r in records
    ]
    records_bytes = ("\n".join(records_lines) + "\n").encode("utf-8")

    manifest.checksums = {
        "nodes.tsv": hashlib.sha256(nodes_bytes).hexdigest(),
        "records.tsv": hashlib.sha256(records_bytes).hexdigest(),
    }
    (path / "nodes.tsv").write_bytes(nodes_bytes)
    (path / "records.tsv").write_bytes(records_bytes)
    (path / "manifest.json").write_text(manifest.to_json(), encoding="utf-8")
    return path


class NodeStore:
    """Read-only view of a store directory with in-memory containment index."""

    def __init__(
        self,
        path: Path,
        manifest: StoreManifest,
        metas: list[NodeMeta],
        records: list[NodeRecord],
    ):
        self.path = path
        self.manifest = manifest
        self._meta_by_node: dict[tuple[int, int], NodeMeta] = {
            (m.slice_index, m.node_id): m for m in metas
        }
        self._members: dict[tuple[int, int], list[tuple[str, str]]] = {}
        self._nodes_of: dict[tuple[str, str], list[tuple[int, int]]] = {}
        for r in records:
            key = (r.slice_index, r.node_id)
            self._members.setdefault(key, []).append((r.symbol, r.polarity))
            self._nodes_of.setdefault((r.symbol, r.polarity), []).append(key)
        for members in self._members.values():
            members.sort()
        for keys in self._nodes_of.values():
            keys.sort()
        self._symbols = set(manifest.symbols)
        self._verify(metas, records)

    def _verify(self, metas: list[NodeMeta], records: list[NodeRecord]) -> None:
        if len(records) != self.manifest.record_count:
            raise StoreCorruptError(
                f"records.tsv has {len(records)} rows, manifest says "
                f"{self.manifest.record_count}"
            )
        if len(metas) != self.manifest.node_count:
            raise StoreCorruptError(
                f"nodes.tsv has {len(metas)} rows, manifest says {self.manifest.node_count}"
            )
        for key, meta in self._meta_by_node.items():
            got = len(self._members.get(key, ()))
            if got != meta.record_count:
                raise StoreCorruptError(
                    f"node {key} has {got} records, nodes.tsv says {meta.record_count}"
                )
        orphans = set(self._members) - set(self._meta_by_node)
        if orphans:
            raise StoreCorruptError(f"records reference unknown nodes: {sorted(orphans)[:5]}")

    @property
    def symbols(self) -> list[str]:
        return list(self.manifest.symbols)

    def has_symbol(self, symbol: str) -> bool:
        return symbol in self._symbols

    def node_count(self) -> int:
        return len(self._meta_by_node)

    def record_count(self) -> int:
        return self.manifest.record_count

    def metas(self) -> list[NodeMeta]:
        return sorted(self._meta_by_node.values())

    def query_nodes_containing(self, symbol: str, polarity: str) -> list[tuple[int, int]]:
        """Every stored (slice, node) containing the record, sorted."""
        return list(self._nodes_of.get((symbol, polarity), ()))

    def node_members(self, slice_index: int, node_id: int) -> list[tuple[str, str]]:
        """Members of one stored node, sorted by (symbol, polarity)."""
        key = (slice_index, node_id)
        if key not in self._meta_by_node:
            raise UnknownNodeError(f"store has no node (slice={slice_index}, node={node_id})")
        return list(self._members[key])

    def node_meta(self, slice_index: int, node_id: int) -> NodeMeta:
        key = (slice_index, node_id)
        if key not in self._meta_by_node:
            raise UnknownNodeError(f"store has no node (slice={slice_index}, node={node_id})")
        return self._meta_by_node[key]


def _checked_read(path: Path, name: str, expected_sha: str | None) -> list[str]:
    file_path = path / name
    try:
        data = file_path.read_bytes()
    except OSError as exc:
        raise StoreError(f"{file_path}: cannot read: {exc}") from exc
    if expected_sha is not None:
        got = hashlib.sha256(data).hexdigest()
        if got != expected_sha:
            raise StoreCorruptError(f"{file_path}: checksum mismatch")
    return data.decode("utf-8").splitlines()


def open_store(path: str | Path) -> NodeStore:
    """Open and fully verify a store directory."""
    path = Path(path)
    manifest_path = path / "manifest.json"
    try:
        manifest = StoreManifest.from_json(manifest_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise StoreError(f"{manifest_path}: cannot read: {exc}") from exc
    except (json.JSONDecodeError, TypeError) as exc:
        raise StoreCorruptError(f"{manifest_path}: invalid manifest: {exc}") from exc

    nodes_lines = _checked_read(path, "nodes.tsv", manifest.checksums.get("nodes.tsv"))
    records_lines = _checked_read(path, "records.tsv", manifest.checksums.get("records.tsv"))
    if not nodes_lines or nodes_lines[0] != _NODES_HEADER:
        raise StoreCorruptError(f"{path/'nodes.tsv'}: bad header")
    if not records_lines or records_lines[0] != _RECORDS_HEADER:
        raise StoreCorruptError(f"{path/'records.tsv'}: bad header")

    metas: list[NodeMeta] = []
    for line in nodes_lines[1:]:
        parts = line.split("\t")
        if len(parts) != 4:
            raise StoreCorruptError(f"{path/'nodes.tsv'}: malformed row {line!r}")
        metas.append(NodeMeta(int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3])))

    records: list[NodeRecord] = []
    for line in records_lines[1:]:
        parts = line.split("\t")
        if len(parts) != 4 or parts[3] not in ("O", "I"):
            raise StoreCorruptError(f"{path/'records.tsv'}: malformed row {line!r}")
        records.append(NodeRecord(int(parts[0]), int(parts[1]), parts[2], parts[3]))

    return NodeStore(path, manifest, metas, records)
