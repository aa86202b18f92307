"""Permalink repository: append-only store, records, derivation trees."""

from .records import validate_instance_doc, validate_layout, validate_theme
from .repository import Repository, TOKEN_ALPHABET, TOKEN_LENGTH
from .store import LogStore

__all__ = ["Repository", "LogStore", "TOKEN_ALPHABET", "TOKEN_LENGTH",
           "validate_theme", "validate_layout", "validate_instance_doc"]
