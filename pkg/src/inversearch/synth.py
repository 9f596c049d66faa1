"""Seeded synthetic price universes with planted inverse pairs.

Each instrument follows an independent geometric random walk over business
days. For every planted pair, the partner's daily changes are the exact
negation of its twin's (optionally perturbed by noise proportional to the
day's change magnitude) and its prices are rebuilt multiplicatively from
those changes. A ``truth.json`` next to the CSVs records the planted pairs
so recovery can be scored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class SynthSpec:
    seed: int
    n_instruments: int
    n_days: int
    planted_pairs: int = 0
    noise_sigma: float = 0.0  # noise scale as a fraction of |change|
    base_volatility: float = 0.02

    def __post_init__(self) -> None:
        if self.n_instruments < 1:
            raise ValueError("n_instruments must be >= 1")
        if self.n_days < 2:
            raise ValueError("n_days must be >= 2")
        if self.planted_pairs < 0 or 2 * self.planted_pairs > self.n_instruments:
            raise ValueError(
                f"2 * planted_pairs must be <= n_instruments "
                f"({2 * self.planted_pairs} > {self.n_instruments})"
            )
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.base_volatility <= 0:
            raise ValueError("base_volatility must be > 0")


_START = date(2011, 1, 3)  # a Monday


def business_days(n: int, start: date = _START) -> list[date]:
    days = []
    d = start
    while len(days) < n:
        if d.weekday() < 5:
            days.append(d)
        d += timedelta(days=1)
    return days


def _walk_changes(rng: np.random.Generator, n: int, vol: float) -> np.ndarray:
    # expm1 keeps every 1 + change strictly positive
    drift = rng.uniform(-2e-4, 4e-4)
    return np.expm1(rng.normal(drift, vol, size=n))


def _prices_from_changes(start_price: float, changes: np.ndarray) -> np.ndarray:
    prices = np.empty(changes.size + 1, dtype=np.float64)
    prices[0] = start_price
    prices[1:] = start_price * np.cumprod(1.0 + changes)
    return prices


def generate_synthetic(spec: SynthSpec, out_dir: str | Path) -> list[Path]:
    """Write one CSV per instrument plus truth.json; fully seed-deterministic."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)
    days = business_days(spec.n_days)
    n_changes = spec.n_days - 1

    series: list[tuple[str, np.ndarray]] = []
    pairs: list[tuple[str, str]] = []
    for p in range(1, spec.planted_pairs + 1):
        sym_a = f"INV{p:03d}A"
        sym_b = f"INV{p:03d}B"
        changes_a = _walk_changes(rng, n_changes, spec.base_volatility)
        changes_b = np.negative(changes_a)
        if spec.noise_sigma > 0:
            noise = spec.noise_sigma * np.abs(changes_a) * rng.standard_normal(n_changes)
            changes_b = np.maximum(changes_b + noise, -0.9)
        start_a = rng.uniform(20.0, 200.0)
        start_b = rng.uniform(20.0, 200.0)
        series.append((sym_a, _prices_from_changes(start_a, changes_a)))
        series.append((sym_b, _prices_from_changes(start_b, changes_b)))
        pairs.append((sym_a, sym_b))
    for j in range(1, spec.n_instruments - 2 * spec.planted_pairs + 1):
        sym = f"RWK{j:04d}"
        changes = _walk_changes(rng, n_changes, spec.base_volatility)
        start = rng.uniform(20.0, 200.0)
        series.append((sym, _prices_from_changes(start, changes)))

    written: list[Path] = []
    for symbol, prices in series:
        lines = ["date,adj_close"]
        lines += [f"{d.isoformat()},{float(p)!r}" for d, p in zip(days, prices)]
        f = out_dir / f"{symbol}.csv"
        f.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(f)

    truth = {
        "seed": spec.seed,
        "n_instruments": spec.n_instruments,
        "n_days": spec.n_days,
        "noise_sigma": spec.noise_sigma,
        "base_volatility": spec.base_volatility,
        "planted_pairs": [list(p) for p in pairs],
    }
    truth_path = out_dir / "truth.json"
    truth_path.write_text(json.dumps(truth, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    written.append(truth_path)
    return written


def load_truth(out_dir: str | Path) -> dict:
    return json.loads((Path(out_dir) / "truth.json").read_text(encoding="utf-8"))
