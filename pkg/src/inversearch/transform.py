"""Change vectors, slicing, inverse signals, and self-labels.

Prices become fractional day-over-day changes (P_next/P_prev - 1), changes
are cut into consecutive slices of h values, every slice gets a mirrored
twin with all changes negated, and each signal is labeled with the
left-to-right sum of its values so unlabeled data can feed a supervised
learner. Negation is exact in binary floating point, so the twin's label
is exactly the negated original label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .errors import DegenerateSliceError, UnknownSymbolError
from .ingest import AlignedUniverse, max_slice_index

ORIGINAL = "O"
INVERSE = "I"

DEFAULT_H = 5


@dataclass(eq=False)
class ChangeSeries:
    """Daily fractional changes for one instrument; NaN where not computable."""

    symbol: str
    values: np.ndarray  # float64, length = calendar length - 1
    mask: np.ndarray  # bool, True where both neighbor prices were present

    def __len__(self) -> int:
        return len(self.values)


@dataclass(eq=False)
class LabeledInstance:
    """One instrument's signal for one slice: h changes plus its self-label."""

    symbol: str
    polarity: str  # ORIGINAL or INVERSE
    slice_index: int
    features: np.ndarray  # exactly h float64 values
    label: float


@dataclass(eq=False)
class SliceTrainingSet:
    """All original+inverse instances of one slice, in deterministic order.

    Instances are ordered by symbol ascending, original before inverse, so
    row 2*i is symbol i's original signal and row 2*i+1 its inverse.
    """

    slice_index: int
    symbols: list[str]  # one entry per instance
    polarity: np.ndarray  # uint8: 0 = original, 1 = inverse
    features: np.ndarray  # (n_instances, h) float64
    labels: np.ndarray  # (n_instances,) float64

    def __len__(self) -> int:
        return len(self.symbols)

    def instance(self, i: int) -> LabeledInstance:
        return LabeledInstance(
            symbol=self.symbols[i],
            polarity=INVERSE if self.polarity[i] else ORIGINAL,
            slice_index=self.slice_index,
            features=self.features[i].copy(),
            label=float(self.labels[i]),
        )

    def members(self) -> list[tuple[str, str]]:
        return [
            (s, INVERSE if p else ORIGINAL) for s, p in zip(self.symbols, self.polarity)
        ]

    def __iter__(self) -> Iterator[LabeledInstance]:
        return (self.instance(i) for i in range(len(self)))


def to_changes(universe: AlignedUniverse, symbol: str) -> ChangeSeries:
    """Fractional changes for every pair of consecutive calendar days."""
    if symbol not in universe.prices:
        raise UnknownSymbolError(f"unknown symbol {symbol!r}")
    p = universe.prices[symbol]
    present = ~np.isnan(p)
    values = p[1:] / p[:-1] - 1.0
    mask = present[:-1] & present[1:]
    values[~mask] = np.nan
    return ChangeSeries(symbol=symbol, values=values, mask=mask)


def slice_changes(series: ChangeSeries, h: int = DEFAULT_H) -> list[tuple[int, np.ndarray]]:
    """Cut a change series into complete slices of h present changes.

    Slice k covers changes (k-1)*h .. k*h-1 (0-based); slices containing
    any missing change are skipped, and a trailing remainder shorter than
    h is dropped.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    out: list[tuple[int, np.ndarray]] = []
    k_max = len(series.values) // h
    for k in range(1, k_max + 1):
        lo = (k - 1) * h
        if series.mask[lo : k * h].all():
            out.append((k, series.values[lo : k * h].copy()))
    return out


def make_inverse(features: np.ndarray) -> np.ndarray:
    """Elementwise negation; applying it twice restores the input bit-exactly."""
    return np.negative(features)


def self_label(features: np.ndarray) -> float:
    """Left-to-right sum of the slice's changes."""
    acc = 0.0
    for v in features:
        acc += float(v)
    return acc


def training_set_from_changes(
    changes: Mapping[str, ChangeSeries], slice_index: int, h: int = DEFAULT_H
) -> SliceTrainingSet:
    """Assemble one slice's training set from per-symbol change series.

    Every symbol whose slice is fully present contributes exactly two
    instances: its original signal and the negated twin with negated label.
    """
    if slice_index < 1:
        raise DegenerateSliceError(f"slice index must be >= 1, got {slice_index}")
    rows: list[np.ndarray] = []
    symbols: list[str] = []
    lo = (slice_index - 1) * h
    hi = slice_index * h
    for symbol in sorted(changes):
        cs = changes[symbol]
        if hi > len(cs.values) or not cs.mask[lo:hi].all():
            continue
        rows.append(cs.values[lo:hi])
        symbols.append(symbol)
    return _assemble(slice_index, symbols, rows, h)


def build_training_set(
    universe: AlignedUniverse, slice_index: int, h: int = DEFAULT_H
) -> SliceTrainingSet:
    """Training set for one slice straight from an aligned universe."""
    k_max = max_slice_index(len(universe.calendar), h)
    if not 1 <= slice_index <= k_max:
        raise DegenerateSliceError(
            f"slice index {slice_index} out of range 1..{k_max}"
        )
    changes = {s: to_changes(universe, s) for s in universe.symbols}
    return training_set_from_changes(changes, slice_index, h)


def _assemble(
    slice_index: int, symbols: list[str], rows: list[np.ndarray], h: int
) -> SliceTrainingSet:
    m = len(symbols)
    features = np.empty((2 * m, h), dtype=np.float64)
    labels = np.empty(2 * m, dtype=np.float64)
    polarity = np.empty(2 * m, dtype=np.uint8)
    out_symbols: list[str] = []
    for i, (symbol, row) in enumerate(zip(symbols, rows)):
        label = self_label(row)
        features[2 * i] = row
        labels[2 * i] = label
        polarity[2 * i] = 0
        features[2 * i + 1] = np.negative(row)
        labels[2 * i + 1] = -label
        polarity[2 * i + 1] = 1
        out_symbols.extend((symbol, symbol))
    return SliceTrainingSet(
        slice_index=slice_index,
        symbols=out_symbols,
        polarity=polarity,
        features=features,
        labels=labels,
    )
