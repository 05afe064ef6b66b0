"""Local HTTP service exposing the transliteration pipeline.

POST /v1/transliterate   {"text": str, "top_k"?: int, "prefix_mode"?: bool}
GET  /v1/health          resource status

Responses are UTF-8 JSON.  Pipeline resources are shared immutably across
requests; identical requests return identical bodies apart from
``latency_ms``.  The request body is parsed by hand so malformed JSON and a
missing "text" field map to 400 and an oversize body to 413, before any
framework validation kicks in.
"""

from __future__ import annotations

import json
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .lexicon import Candidate
from .pipeline import Pipeline, SlotResult, TransliterationResult
from .text_core import TokenKind

DEFAULT_MAX_BODY_BYTES = 1 << 20


def _candidate_json(candidate: Candidate) -> dict:
    return {"text": candidate.text, "count": candidate.count, "source": candidate.source.value}


def _slot_json(slot: SlotResult) -> dict:
    body = {
        "surface": slot.surface,
        "kind": slot.kind.value,
        "candidates": [_candidate_json(c) for c in slot.candidates],
        "chosen_index": slot.chosen_index,
    }
    if slot.incomplete:
        body["incomplete"] = True
    return body


def result_json(result: TransliterationResult) -> dict:
    return {
        "output": result.output,
        "slots": [_slot_json(slot) for slot in result.slots],
        "latency_ms": result.latency_ms,
    }


def create_app(
    pipeline: Optional[Pipeline],
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
) -> FastAPI:
    """Build the service app.  ``pipeline=None`` means still initializing:
    every endpoint answers 503 until a real pipeline is supplied."""
    app = FastAPI(title="xlit", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.pipeline = pipeline
    app.state.max_body_bytes = max_body_bytes

    def _error(status: int, message: str) -> Response:
        return Response(
            content=json.dumps({"error": message}),
            status_code=status,
            media_type="application/json",
        )

    @app.post("/v1/transliterate")
    async def transliterate(request: Request) -> Response:
        pipe: Optional[Pipeline] = app.state.pipeline
        if pipe is None:
            return _error(503, "resources not loaded")
        body = await request.body()
        if len(body) > app.state.max_body_bytes:
            return _error(413, "request body too large")
        try:
            payload = json.loads(body)
        except (UnicodeDecodeError, json.JSONDecodeError):
            return _error(400, "malformed JSON body")
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            return _error(400, 'missing or non-string "text"')
        top_k = payload.get("top_k")
        if top_k is not None and (not isinstance(top_k, int) or isinstance(top_k, bool) or top_k < 1):
            return _error(400, '"top_k" must be a positive integer')
        prefix_mode = payload.get("prefix_mode", False)
        if not isinstance(prefix_mode, bool):
            return _error(400, '"prefix_mode" must be a boolean')
        if prefix_mode:
            result = pipe.transliterate_prefix(payload["text"], top_k=top_k)
        else:
            result = pipe.transliterate_sentence(payload["text"], top_k=top_k)
        return Response(
            content=json.dumps(result_json(result), ensure_ascii=False),
            media_type="application/json",
        )

    @app.get("/v1/health")
    async def health() -> Response:
        pipe: Optional[Pipeline] = app.state.pipeline
        if pipe is None:
            return _error(503, "initializing")
        body = {
            "status": "ok",
            "resources": {
                "rules": pipe.has_rules,
                "lexicon": pipe.has_lexicon,
                "lm": pipe.has_model,
            },
        }
        return Response(content=json.dumps(body), media_type="application/json")

    return app
