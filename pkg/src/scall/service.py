"""HTTP facade over validation, weight derivation and allocation search.

Stateless JSON-over-HTTP API mirroring the editor/solver split: the client
owns the model document and posts it with each request. Error bodies share
one shape: {"error": CODE, "message": ..., "detail": {...}} (detail omitted
when empty). Searches run synchronously under a wall-time cap; expiry yields
a 504-style error instead of an open-ended request. With a static directory
configured the built web UI is served from the same process.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeoutError
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .ahp import (
    InconsistentComparisonError,
    TradeoffVector,
    consistency_ratio,
    derive_tradeoff,
    principal_eigen,
    validate_comparison_matrix,
)
from .model import ModelValidationError, parse_comparison_entry, validate_model
from .search import (
    GAConfig,
    NoFeasibleAllocationError,
    SearchReport,
    SpaceTooLargeError,
    alternatives,
    exhaustive_search,
    ga_search,
)

DEFAULT_TIME_CAP_S = 30.0


def _error(status: int, code: str, message: str, **detail: Any) -> JSONResponse:
    body: dict[str, Any] = {"error": code, "message": message}
    if detail:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


async def _read_json(request: Request) -> Any | JSONResponse:
    raw = await request.body()
    try:
        return json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        return _error(400, "MALFORMED_BODY", f"request body is not JSON: {e}")


def create_app(
    static_dir: str | None = None,
    time_cap_s: float = DEFAULT_TIME_CAP_S,
    exhaustive_cap: int | None = None,
) -> FastAPI:
    app = FastAPI(title="scall", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    executor = ThreadPoolExecutor(max_workers=4)

    @app.post("/api/v1/validate")
    async def validate(request: Request):
        body = await _read_json(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            validate_model(body)
        except ModelValidationError as e:
            return {"valid": False, "report": e.report()}
        return {"valid": True, "report": []}

    @app.post("/api/v1/ahp")
    async def ahp(request: Request):
        body = await _read_json(request)
        if isinstance(body, JSONResponse):
            return body
        rows = body.get("comparison") if isinstance(body, dict) else body
        if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
            return _error(400, "MALFORMED_BODY", "expected a comparison matrix (list of rows)")
        try:
            matrix = [[parse_comparison_entry(v) for v in row] for row in rows]
            validate_comparison_matrix(matrix)
        except ValueError as e:
            return _error(400, "BAD_COMPARISON", str(e))
        lam, w = principal_eigen(matrix)
        cr = consistency_ratio(matrix, lam)
        try:
            F = derive_tradeoff(matrix)
        except InconsistentComparisonError as e:
            return _error(
                422,
                "INCONSISTENT",
                f"judgments are inconsistent, CR = {e.cr:.4f} (revise and retry)",
                cr=e.cr,
            )
        return {"weights": list(F.f), "fc": F.fc, "lambdaMax": lam, "cr": cr}

    @app.post("/api/v1/allocate")
    async def allocate(request: Request):
        body = await _read_json(request)
        if isinstance(body, JSONResponse):
            return body
        if not isinstance(body, dict) or "model" not in body:
            return _error(400, "MALFORMED_BODY", "expected an object with a 'model' field")
        method = body.get("method", "ga")
        if method not in ("ga", "exhaustive"):
            return _error(400, "MALFORMED_BODY", f"method must be 'ga' or 'exhaustive', got {method!r}")
        count = body.get("alternatives", 1)
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            return _error(400, "MALFORMED_BODY", "alternatives must be a positive integer")
        seed = body.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            return _error(400, "MALFORMED_BODY", "seed must be an integer")

        try:
            model = validate_model(body["model"])
        except ModelValidationError as e:
            return _error(422, "INVALID_MODEL", str(e), report=e.report())

        if body.get("uniformWeights"):
            F = TradeoffVector.uniform(model.l)
        elif model.comparison is not None:
            try:
                F = derive_tradeoff(model.comparison)
            except InconsistentComparisonError as e:
                return _error(
                    422, "INCONSISTENT", f"comparison judgments are inconsistent, CR = {e.cr:.4f}",
                    cr=e.cr,
                )
        else:
            F = TradeoffVector.uniform(model.l)

        ga_cfg = GAConfig(seed=seed)
        if isinstance(body.get("gaConfig"), dict):
            try:
                ga_cfg = GAConfig.from_dict({**body["gaConfig"], "seed": seed})
            except (TypeError, ValueError) as e:
                return _error(400, "MALFORMED_BODY", f"bad gaConfig: {e}")

        def run() -> dict:
            if method == "exhaustive":
                report = exhaustive_search(model, F, top_k=count, cap=exhaustive_cap)
                return report.to_dict(model)
            if count > 1:
                runs = alternatives(model, F, count, base_seed=seed, cfg=ga_cfg)
                return _merge_reports(model, runs)
            return ga_search(model, F, ga_cfg).to_dict(model)

        future = executor.submit(run)
        try:
            return future.result(timeout=time_cap_s)
        except FutureTimeoutError:
            future.cancel()
            return _error(
                504, "TIMEOUT", f"search exceeded the {time_cap_s:.0f} s request cap", cap=time_cap_s
            )
        except NoFeasibleAllocationError as e:
            return _error(409, e.code, str(e), **e.diagnostics)
        except SpaceTooLargeError as e:
            return _error(413, e.code, str(e), space=e.space, cap=e.cap)

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def _merge_reports(model, runs: list[SearchReport]) -> dict:
    """Fold multiple GA runs into one report: global best plus the distinct
    best allocations of every run as the alternatives list."""
    best = runs[0]
    merged = best.to_dict(model)
    merged["alternatives"] = [
        {"p": model.allocation_ids(r.best), "result": r.best_result.to_dict()} for r in runs
    ]
    merged["evaluated"] = sum(r.evaluated for r in runs)
    merged["generations"] = sum(r.generations or 0 for r in runs)
    merged["elapsed"] = sum(r.elapsed for r in runs)
    return merged
