"""Price file loading, trading-calendar construction, and alignment.

Input is one CSV per instrument (``<SYMBOL>.csv``, header ``date,adj_close``,
ISO dates ascending, positive adjusted closes). A common calendar is built
from dates on which enough instruments trade, every instrument is mapped
onto it (missing slots stay NaN), and per-slice eligibility marks which
instruments have every price a slice needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import CalendarError, InputFormatError

FORWARD_FILL = "forward_fill"
EXCLUDE = "exclude"
FILL_POLICIES = (FORWARD_FILL, EXCLUDE)

DEFAULT_MIN_PRESENCE = 0.5
DEFAULT_MAX_FILL_GAP = 5

_SYMBOL_RE = re.compile(r"[A-Z0-9.\-]+")
_HEADER = "date,adj_close"


@dataclass(eq=False)
class PriceSeries:
    """One instrument's dated adjusted closing prices, ascending."""

    symbol: str
    dates: list[date]
    prices: np.ndarray  # float64, strictly positive

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class TradingCalendar:
    """Ordered trading days defining the time-steps of a build."""

    days: tuple[date, ...]

    def __post_init__(self) -> None:
        if not self.days:
            raise CalendarError("calendar is empty")
        for a, b in zip(self.days, self.days[1:]):
            if a >= b:
                raise CalendarError(f"calendar days not strictly ascending at {b}")

    def __len__(self) -> int:
        return len(self.days)

    def index(self) -> dict[date, int]:
        return {d: i for i, d in enumerate(self.days)}


@dataclass(eq=False)
class AlignedUniverse:
    """Instruments mapped onto a shared calendar; NaN marks a missing day."""

    calendar: TradingCalendar
    prices: dict[str, np.ndarray] = field(default_factory=dict)
    fill_policy: str = FORWARD_FILL

    @property
    def symbols(self) -> list[str]:
        return sorted(self.prices)

    def __len__(self) -> int:
        return len(self.prices)


def valid_symbol(symbol: str) -> bool:
    return bool(_SYMBOL_RE.fullmatch(symbol))


def load_price_file(path: str | Path) -> PriceSeries:
    """Parse and validate one ``<SYMBOL>.csv`` price file."""
    path = Path(path)
    symbol = path.stem
    if not valid_symbol(symbol):
        raise InputFormatError(f"{path}: invalid symbol {symbol!r} in file name")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"{path}: cannot read file: {exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0].strip() != _HEADER:
        raise InputFormatError(f"{path}: expected header {_HEADER!r}")

    dates: list[date] = []
    prices: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InputFormatError(f"{path}:{lineno}: malformed row {line!r}")
        try:
            day = date.fromisoformat(parts[0].strip())
            price = float(parts[1])
        except ValueError as exc:
            raise InputFormatError(f"{path}:{lineno}: malformed row {line!r}") from exc
        if not np.isfinite(price) or price <= 0.0:
            raise InputFormatError(f"{path}:{lineno}: non-positive price {parts[1].strip()}")
        if dates:
            if day == dates[-1]:
                raise InputFormatError(f"{path}:{lineno}: duplicate date {day}")
            if day < dates[-1]:
                raise InputFormatError(f"{path}:{lineno}: dates not ascending at {day}")
        dates.append(day)
        prices.append(price)
    if not dates:
        raise InputFormatError(f"{path}: no price rows")
    return PriceSeries(symbol=symbol, dates=dates, prices=np.asarray(prices, dtype=np.float64))


def load_universe(input_dir: str | Path) -> list[PriceSeries]:
    """Load every ``*.csv`` under input_dir, sorted by file name."""
    input_dir = Path(input_dir)
    files = sorted(input_dir.glob("*.csv"))
    return [load_price_file(f) for f in files]


def build_calendar(
    all_series: Iterable[PriceSeries],
    min_presence: float = DEFAULT_MIN_PRESENCE,
) -> TradingCalendar:
    """Union of dates on which at least min_presence of instruments trade."""
    series = list(all_series)
    if not series:
        raise CalendarError("no input series")
    if not 0.0 < min_presence <= 1.0:
        raise ValueError(f"min_presence must be in (0, 1], got {min_presence}")
    counts: dict[date, int] = {}
    for s in series:
        for d in s.dates:
            counts[d] = counts.get(d, 0) + 1
    m = len(series)
    days = sorted(d for d, c in counts.items() if c / m >= min_presence)
    if not days:
        raise CalendarError(
            f"no date is covered by at least {min_presence:.0%} of the {m} instruments"
        )
    return TradingCalendar(days=tuple(days))


def align(
    all_series: Iterable[PriceSeries],
    calendar: TradingCalendar,
    fill_policy: str = FORWARD_FILL,
    max_fill_gap: int = DEFAULT_MAX_FILL_GAP,
) -> AlignedUniverse:
    """Map each instrument onto the calendar, optionally forward-filling gaps.

    Only interior gaps (strictly between two present calendar slots) of at
    most max_fill_gap days are filled; longer gaps, days before an
    instrument's first observation, and days after its last stay missing.
    Observations on non-calendar dates are dropped.
    """
    if fill_policy not in FILL_POLICIES:
        raise ValueError(f"fill_policy must be one of {FILL_POLICIES}, got {fill_policy!r}")
    idx = calendar.index()
    n = len(calendar)
    universe = AlignedUniverse(calendar=calendar, fill_policy=fill_policy)
    for s in all_series:
        if s.symbol in universe.prices:
            raise InputFormatError(f"duplicate symbol {s.symbol!r}")
        slots = np.full(n, np.nan, dtype=np.float64)
        for d, p in zip(s.dates, s.prices):
            i = idx.get(d)
            if i is not None:
                slots[i] = p
        if fill_policy == FORWARD_FILL:
            _forward_fill_interior(slots, max_fill_gap)
        universe.prices[s.symbol] = slots
    return universe


def _forward_fill_interior(slots: np.ndarray, max_fill_gap: int) -> None:
    present = np.flatnonzero(~np.isnan(slots))
    for a, b in zip(present, present[1:]):
        gap = b - a - 1
        if 0 < gap <= max_fill_gap:
            slots[a + 1 : b] = slots[a]


def max_slice_index(n_days: int, h: int) -> int:
    """Number of complete slices of h changes in an n_days calendar."""
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    return max(0, (n_days - 1) // h)


def slice_eligibility(universe: AlignedUniverse, h: int) -> dict[str, np.ndarray]:
    """Per-symbol boolean array: entry k-1 is True iff slice k is fully priced.

    Slice k needs the h+1 prices at calendar positions (k-1)*h .. k*h; an
    instrument is eligible only when all of them are present.
    """
    n = len(universe.calendar)
    k_max = max_slice_index(n, h)
    out: dict[str, np.ndarray] = {}
    for symbol, slots in universe.prices.items():
        present = ~np.isnan(slots)
        elig = np.empty(k_max, dtype=bool)
        for k in range(1, k_max + 1):
            lo = (k - 1) * h
            elig[k - 1] = bool(present[lo : k * h + 1].all())
        out[symbol] = elig
    return out


def eligible_symbols(eligibility: Mapping[str, np.ndarray], slice_index: int) -> list[str]:
    """Symbols eligible for a slice, ascending."""
    return sorted(s for s, e in eligibility.items() if slice_index <= e.size and e[slice_index - 1])
