"""HTTP query service over an immutable, already-built store.

JSON API (UTF-8):
  GET /api/v1/similar?symbol=&mode=&top=   ranked co-occurrence list
  GET /api/v1/symbols                      sorted instrument universe
  GET /api/v1/stats                        manifest echo
Errors: {"error": {"code": ..., "message": ...}} with codes
``unknown_symbol`` (404) and ``bad_request`` (400). Optionally serves a
static single-page UI from a directory at ``/``.
"""

from __future__ import annotations

from dataclasses import asdict
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import UnknownSymbolError
from .ranker import DEFAULT_TOP_K, MODES, RankedList, RankQuery, rank
from .store import NodeStore, open_store


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": {"code": code, "message": message}})


def ranked_list_payload(result: RankedList) -> dict:
    return {
        "symbol": result.symbol,
        "mode": result.mode,
        "nodes_visited": result.nodes_visited,
        "results": [
            {"rank": e.rank, "symbol": e.symbol, "score": e.score} for e in result.entries
        ],
    }


def create_app(store: NodeStore, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="inversearch", docs_url=None, redoc_url=None)

    @app.get("/api/v1/similar")
    def similar(symbol: str | None = None, mode: str = "inverse", top: str = str(DEFAULT_TOP_K)):
        if not symbol:
            return _error(400, "bad_request", "missing required parameter: symbol")
        if mode not in MODES:
            return _error(400, "bad_request", f"mode must be one of {list(MODES)}")
        try:
            top_k = int(top)
        except ValueError:
            return _error(400, "bad_request", f"top must be an integer, got {top!r}")
        if top_k < 1:
            return _error(400, "bad_request", "top must be >= 1")
        query = RankQuery(symbol=symbol.strip().upper(), mode=mode, top_k=top_k)
        try:
            result = rank(store, query)
        except UnknownSymbolError as exc:
            return _error(404, "unknown_symbol", str(exc))
        return ranked_list_payload(result)

    @app.get("/api/v1/symbols")
    def symbols():
        return {"symbols": sorted(store.symbols)}

    @app.get("/api/v1/stats")
    def stats():
        return asdict(store.manifest)

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def serve(store_path: str | Path, bind: str = "127.0.0.1:8000", ui_dir: str | Path | None = None) -> None:
    """Open the store and block serving the API on addr:port."""
    import uvicorn

    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"bind must be addr:port, got {bind!r}")
    app = create_app(open_store(store_path), ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
