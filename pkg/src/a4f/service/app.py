"""HTTP facade over the parser, finder, challenge engine, and repository.

Interaction is anonymous by construction: no cookies, no auth headers;
unguessable tokens are the only access control.  Every execute call
appends exactly one model record (including error results) so derivation
trees capture failed attempts too.  Solves are capped by a per-request
budget and a bounded worker gate; health checks bypass the gate.
"""

from __future__ import annotations

import threading
import time
from collections import deque
from typing import Optional

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..challenge import execute_on_view, merge, split
from ..errors import (A4FError, CodeTooLargeError, ForbiddenError, LexError,
                      MalformedInputError, NotFoundError, ParseError,
                      SecretNameClashError, StoreCorruptError,
                      UnknownCommandError)
from ..finder import Budget
from ..lang import parse
from ..repo import LogStore, Repository, validate_instance_doc
from .config import ServiceConfig


def _error_json(status: int, code: str, message: str,
                position: Optional[int] = None) -> JSONResponse:
    body = {"error": code, "message": message}
    if position is not None:
        body["position"] = position
    return JSONResponse(status_code=status, content=body)


class _RateLimiter:
    def __init__(self, per_minute: int):
        self.per_minute = per_minute
        self.hits: dict[str, deque] = {}
        self.lock = threading.Lock()

    def allow(self, key: str) -> bool:
        now = time.monotonic()
        with self.lock:
            q = self.hits.setdefault(key, deque())
            while q and now - q[0] > 60.0:
                q.popleft()
            if len(q) >= self.per_minute:
                return False
            q.append(now)
            return True


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    app = FastAPI(title="a4f", version="0.1.0", docs_url=None, redoc_url=None)
    app.state.config = config
    app.state.repo = Repository(LogStore(config.store_path))
    app.state.solve_gate = threading.Semaphore(config.max_concurrent_solves)
    app.state.rate = _RateLimiter(config.rate_limit_per_min)

    if config.cors_allowed_origins:
        app.add_middleware(
            CORSMiddleware, allow_origins=config.cors_allowed_origins,
            allow_methods=["*"], allow_headers=["*"])

    repo: Repository = app.state.repo

    @app.exception_handler(RequestValidationError)
    async def _invalid_body(request: Request, exc: RequestValidationError):
        return _error_json(400, "malformed-input", "invalid request body")

    @app.get("/healthz")
    def healthz():
        try:
            repo.store.healthcheck()
        except StoreCorruptError as e:
            return _error_json(500, e.code, e.message)
        return {"status": "ok"}

    @app.post("/api/models", status_code=201)
    def share_model(body: dict = Body(...)):
        code = body.get("code")
        if not isinstance(code, str) or not code.strip():
            return _error_json(400, "parse", "request must carry model code")
        if len(code.encode("utf-8")) > config.max_code_bytes:
            return _error_json(413, "code-too-large",
                               f"code exceeds {config.max_code_bytes} bytes")
        try:
            public, private = repo.save_shared(
                code, theme=body.get("theme"), max_bytes=config.max_code_bytes)
        except (ParseError, LexError) as e:
            return _error_json(400, "parse", e.message, e.position)
        except CodeTooLargeError as e:
            return _error_json(413, e.code, e.message)
        except MalformedInputError as e:
            return _error_json(400, e.code, e.message)
        return {"public": public, "private": private}

    @app.get("/api/models/{token}")
    def load_model(token: str):
        try:
            return repo.load_by_token(token)
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)

    @app.get("/api/models/{token}/tree")
    def tree(token: str):
        try:
            return repo.export_tree(token)
        except ForbiddenError as e:
            return _error_json(403, e.code, e.message)
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)

    @app.post("/api/models/{token}/execute")
    def execute(token: str, request: Request, body: dict = Body(...)):
        try:
            link = repo.link(token)
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)
        host = request.client.host if request.client else "unknown"
        if not app.state.rate.allow(host):
            return _error_json(429, "rate-limited",
                               "execution rate limit exceeded; retry later")

        code = body.get("code")
        command = body.get("command")
        skip = body.get("skip", 0)
        parent_ref = body.get("parent") or token
        if not isinstance(code, str) or not isinstance(command, str) \
                or not isinstance(skip, int) or skip < 0:
            return _error_json(400, "malformed-input",
                               "execute needs code, command, and a "
                               "non-negative skip")
        if len(code.encode("utf-8")) > config.max_code_bytes:
            return _error_json(413, "code-too-large",
                               f"code exceeds {config.max_code_bytes} bytes")
        try:
            repo.resolve_parent(parent_ref)
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)

        record = repo.model(link["model"])
        public = link["visibility"] == "public"
        stored_code = code
        response = None
        result = "error"
        grade = None
        try:
            if public:
                sm = split(parse(record["code"]))
                _merged_model, merged_text = merge(sm.secret_paragraphs, code)
                stored_code = merged_text
            else:
                sm = None
            acquired = app.state.solve_gate.acquire(
                timeout=config.queue_timeout_s)
            if not acquired:
                return _error_json(503, "overloaded",
                                   "solver queue timeout; retry later")
            try:
                budget = Budget(timeout_ms=config.solve_timeout_ms)
                grade = execute_on_view(sm, code, command, skip=skip,
                                        budget=budget,
                                        max_scope=config.max_scope)
            finally:
                app.state.solve_gate.release()
        except (ParseError, LexError) as e:
            response = _error_json(400, "parse", e.message, e.position)
        except CodeTooLargeError as e:
            response = _error_json(413, e.code, e.message)
        except SecretNameClashError as e:
            response = _error_json(422, e.code, e.message)
        except UnknownCommandError as e:
            response = _error_json(400, e.code, e.message)
        except A4FError as e:
            result = "error"
            response = None
            grade = None
            message = e.message
        else:
            message = grade.message if grade else None

        if grade is not None:
            result = {"solved": "unsat", "no-witness": "unsat",
                      "counterexample": "sat", "witness": "sat",
                      "error": "error", "resource-limit": "limit"}[grade.verdict]

        record_id = repo.record_execution(parent_ref, stored_code, command,
                                          result)
        if response is not None:
            return response
        out = {"result": result, "modelId": record_id}
        if grade is not None and grade.instance is not None:
            out["instance"] = grade.instance.wire()
        if result == "error" and message:
            out["message"] = message
        if result == "limit":
            out["message"] = message or "analysis budget exhausted"
        return out

    @app.post("/api/instances", status_code=201)
    def share_instance(body: dict = Body(...)):
        model_ref = body.get("model")
        try:
            model_record = repo.resolve_parent(model_ref) \
                if isinstance(model_ref, str) else None
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)
        if model_record is None:
            return _error_json(400, "malformed-input",
                               "instance share needs a model token or id")
        try:
            validate_instance_doc(body.get("instance"))
            token = repo.save_instance(
                model_record["id"], body.get("command"), body.get("skip", 0),
                body.get("instance"), body.get("theme"), body.get("layout"))
        except MalformedInputError as e:
            return _error_json(400, e.code, e.message)
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)
        return {"token": token}

    @app.get("/api/instances/{token}")
    def load_instance(token: str):
        try:
            return repo.load_instance(token)
        except NotFoundError as e:
            return _error_json(404, e.code, e.message)

    return app


def main(argv: Optional[list[str]] = None):
    import argparse

    import uvicorn

    ap = argparse.ArgumentParser(prog="a4f-serve",
                                 description="Run the a4f HTTP service")
    ap.add_argument("--port", type=int, default=None)
    ap.add_argument("--store", default=None)
    ap.add_argument("--timeout-ms", type=int, default=None)
    ap.add_argument("--max-scope", type=int, default=None)
    args = ap.parse_args(argv)

    overrides = {}
    if args.port is not None:
        overrides["port"] = args.port
    if args.store is not None:
        overrides["store_path"] = args.store
    if args.timeout_ms is not None:
        overrides["solve_timeout_ms"] = args.timeout_ms
    if args.max_scope is not None:
        overrides["max_scope"] = args.max_scope
    config = ServiceConfig.from_env(**overrides)
    uvicorn.run(create_app(config), host="0.0.0.0", port=config.port,
                log_level="warning")


if __name__ == "__main__":
    main()
