"""Stateless HTTP facade over the equity engines.

Three POST endpoints under /api/v1 accept the same json bodies as the
cli's json format and return the same shapes.  Every request gets a fresh
compute budget (wall clock and node count) so a hostile or oversized
input degrades into a 422 instead of hanging the process.  Responses for
identical request bodies are byte-identical: payloads are serialized with
sorted keys and no per-request state leaks into the output.

Error envelope: {"error": {"code": ..., "message": ...}} with 400 for
bodies that are not json, 422 for validation failures and exhausted
budgets, 500 for anything else.
"""

from __future__ import annotations

import json
import time
from typing import Callable

from fastapi import FastAPI, Request, Response
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware

from .analysis import dcm_finish_distribution, decision_ev
from .cli import decision_payload, equity_payload, positions_payload
from .dcm import dcm_equities
from .icm import icm_equities, icm_finish_distribution
from .model import (
    Budget,
    ChipsplitError,
    DcmConfig,
    DecisionScenario,
    ResourceLimitError,
    ValidationError,
)

MAX_WALL_SECONDS = 10.0
MAX_NODES = 100_000_000

_CONFIG_FIELDS = ("max_depth", "min_prob", "leaf_policy", "two_player_shortcut")


def _json_response(payload, status_code: int = 200) -> Response:
    body = json.dumps(payload, sort_keys=True)
    return Response(content=body, status_code=status_code, media_type="application/json")


def _error(status_code: int, code: str, message: str) -> Response:
    return _json_response({"error": {"code": code, "message": message}}, status_code)


def _fresh_budget() -> Budget:
    return Budget(max_nodes=MAX_NODES, deadline=time.monotonic() + MAX_WALL_SECONDS)


def _as_object(body) -> dict:
    if not isinstance(body, dict):
        raise ValidationError("request body must be a json object")
    return body


def _field(body: dict, name: str, required: bool = True, default=None):
    if name not in body:
        if required:
            raise ValidationError(f"missing field {name!r}")
        return default
    return body[name]


def _parse_config(raw) -> DcmConfig:
    if raw is None:
        return DcmConfig()
    if not isinstance(raw, dict):
        raise ValidationError("config must be a json object")
    unknown = sorted(set(raw) - set(_CONFIG_FIELDS))
    if unknown:
        raise ValidationError(f"unknown config fields: {', '.join(unknown)}")
    kwargs = {name: raw[name] for name in _CONFIG_FIELDS if name in raw}
    return DcmConfig(**kwargs)


def _parse_model(raw, allowed: tuple[str, ...]) -> str:
    if not isinstance(raw, str) or raw not in allowed:
        raise ValidationError(f"model must be one of {', '.join(allowed)}")
    return raw


def _compute_equity(body: dict) -> dict:
    body = _as_object(body)
    stacks = _field(body, "stacks")
    prizes = _field(body, "prizes")
    model = _parse_model(_field(body, "model", required=False, default="dcm"), ("icm", "dcm"))
    config = _parse_config(_field(body, "config", required=False))
    if model == "icm":
        report = icm_equities(stacks, prizes)
    else:
        report = dcm_equities(stacks, prizes, config, budget=_fresh_budget())
    return equity_payload(model, report)


def _compute_positions(body: dict) -> dict:
    body = _as_object(body)
    stacks = _field(body, "stacks")
    model = _parse_model(_field(body, "model", required=False, default="dcm"), ("icm", "dcm"))
    config = _parse_config(_field(body, "config", required=False))
    if model == "icm":
        matrix = icm_finish_distribution(stacks)
    else:
        matrix = dcm_finish_distribution(stacks, config, budget=_fresh_budget())
    return positions_payload(matrix)


def _compute_decision(body: dict) -> dict:
    body = _as_object(body)
    scenario = DecisionScenario.of(
        prizes=_field(body, "prizes"),
        hero=_field(body, "hero"),
        fold_stacks=_field(body, "fold_stacks"),
        win_stacks=_field(body, "win_stacks"),
        lose_stacks=_field(body, "lose_stacks"),
        hero_equity=_field(body, "hero_equity"),
    )
    model = _parse_model(
        _field(body, "model", required=False, default="both"), ("icm", "dcm", "both")
    )
    config = _parse_config(_field(body, "config", required=False))
    if model == "both":
        return {
            "model": "both",
            "icm": decision_payload(decision_ev(scenario, "icm", config)),
            "dcm": decision_payload(
                decision_ev(scenario, "dcm", config, budget=_fresh_budget())
            ),
        }
    budget = _fresh_budget() if model == "dcm" else None
    return decision_payload(decision_ev(scenario, model, config, budget=budget))


async def _handle(request: Request, compute: Callable[[dict], dict]) -> Response:
    try:
        body = await request.json()
    except Exception:
        return _error(400, "malformed_json", "request body is not valid json")
    try:
        payload = await run_in_threadpool(compute, body)
    except ValidationError as exc:
        return _error(422, "validation_error", str(exc))
    except ResourceLimitError as exc:
        return _error(422, "budget_exceeded", str(exc))
    except ChipsplitError as exc:
        return _error(500, "internal_error", str(exc))
    except Exception as exc:
        return _error(500, "internal_error", f"unexpected failure: {exc}")
    return _json_response(payload)


def create_app() -> FastAPI:
    app = FastAPI(title="chipsplit", version="1", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/healthz")
    async def healthz() -> Response:
        return Response(content="ok", media_type="text/plain")

    @app.post("/api/v1/equity")
    async def equity(request: Request) -> Response:
        return await _handle(request, _compute_equity)

    @app.post("/api/v1/positions")
    async def positions(request: Request) -> Response:
        return await _handle(request, _compute_positions)

    @app.post("/api/v1/decision")
    async def decision(request: Request) -> Response:
        return await _handle(request, _compute_decision)

    return app


app = create_app()
