"""Regenerate frontend test fixtures from the real service over a toy store.

Builds a small deterministic universe, runs the HTTP app in-process, and
freezes selected endpoint payloads under tests/fixtures/. Run from the
frontend directory after installing the Python package:

    python3 scripts/make_fixtures.py
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from inversearch.pipeline import BuildConfig, build
from inversearch.service import create_app
from inversearch.store import open_store
from inversearch.synth import SynthSpec, generate_synthetic

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

QUERIES = [
    {"symbol": "INV001A", "mode": "inverse", "top": 5},
    {"symbol": "INV002B", "mode": "inverse", "top": 3},
    {"symbol": "RWK0001", "mode": "direct", "top": 5},
]


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        generate_synthetic(
            SynthSpec(seed=13, n_instruments=24, n_days=61, planted_pairs=3),
            tmp_path / "data",
        )
        build(BuildConfig(input_dir=tmp_path / "data", store_dir=tmp_path / "store"))
        client = TestClient(create_app(open_store(tmp_path / "store")))

        payloads = []
        for q in QUERIES:
            response = client.get("/api/v1/similar", params=q)
            assert response.status_code == 200, response.text
            payloads.append({"query": q, "response": response.json()})
        (FIXTURES / "similar.json").write_text(json.dumps(payloads, indent=2) + "\n")

        symbols = client.get("/api/v1/symbols")
        assert symbols.status_code == 200
        (FIXTURES / "symbols.json").write_text(json.dumps(symbols.json(), indent=2) + "\n")

        unknown = client.get("/api/v1/similar", params={"symbol": "NOPE"})
        assert unknown.status_code == 404
        (FIXTURES / "unknown_symbol.json").write_text(
            json.dumps({"status": 404, "body": unknown.json()}, indent=2) + "\n"
        )
    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()
