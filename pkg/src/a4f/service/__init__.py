"""HTTP service wiring parser, finder, challenge engine, and repository."""

from .app import create_app, main
from .config import ServiceConfig

__all__ = ["create_app", "main", "ServiceConfig"]
