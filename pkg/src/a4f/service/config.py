"""Service configuration, overridable through environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from ..finder.bounds import DEFAULT_MAX_SCOPE, HARD_MAX_SCOPE
from ..finder.budget import DEFAULT_TIMEOUT_MS
from ..lang.lexer import DEFAULT_MAX_SOURCE_BYTES

ENV_PORT = "A4F_PORT"
ENV_STORE = "A4F_STORE"
ENV_TIMEOUT_MS = "A4F_TIMEOUT_MS"
ENV_MAX_SCOPE = "A4F_MAX_SCOPE"
ENV_CORS = "A4F_CORS_ORIGINS"


@dataclass
class ServiceConfig:
    port: int = 8080
    store_path: str = "a4f-store.jsonl"
    solve_timeout_ms: int = DEFAULT_TIMEOUT_MS
    max_scope: int = DEFAULT_MAX_SCOPE
    max_code_bytes: int = DEFAULT_MAX_SOURCE_BYTES
    cors_allowed_origins: list[str] = field(default_factory=lambda: ["*"])
    rate_limit_per_min: int = 30
    max_concurrent_solves: int = max(1, os.cpu_count() or 1)
    queue_timeout_s: float = 30.0

    def __post_init__(self):
        for name in ("port", "solve_timeout_ms", "max_scope", "max_code_bytes",
                     "rate_limit_per_min", "max_concurrent_solves"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_scope > HARD_MAX_SCOPE:
            raise ValueError(f"max_scope is hard-capped at {HARD_MAX_SCOPE}")

    @classmethod
    def from_env(cls, **overrides) -> "ServiceConfig":
        cfg: dict = {}
        if ENV_PORT in os.environ:
            cfg["port"] = int(os.environ[ENV_PORT])
        if ENV_STORE in os.environ:
            cfg["store_path"] = os.environ[ENV_STORE]
        if ENV_TIMEOUT_MS in os.environ:
            cfg["solve_timeout_ms"] = int(os.environ[ENV_TIMEOUT_MS])
        if ENV_MAX_SCOPE in os.environ:
            cfg["max_scope"] = int(os.environ[ENV_MAX_SCOPE])
        if ENV_CORS in os.environ:
            cfg["cors_allowed_origins"] = [
                o.strip() for o in os.environ[ENV_CORS].split(",") if o.strip()]
        cfg.update(overrides)
        return cls(**cfg)
