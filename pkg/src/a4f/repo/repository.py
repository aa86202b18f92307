"""Persistence of models, links, instances, and executions.

Access control is capability-style: an unguessable token is the only way
to reach a stored object, so tokens come from a cryptographically strong
source (11 characters over a 62-symbol alphabet, ~65 bits).  Records are
append-only and never mutated; derivation trees are reconstructed from
parent pointers at export time.
"""

from __future__ import annotations

import secrets as _secrets
from datetime import datetime, timezone
from typing import Optional

from ..challenge import command_index, split
from ..errors import ForbiddenError, NotFoundError
from ..lang import parse
from .records import validate_layout, validate_theme
from .store import LogStore

TOKEN_ALPHABET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
TOKEN_LENGTH = 11

RESULT_VALUES = ("sat", "unsat", "error", "limit")


def _now_iso() -> str:
    dt = datetime.now(timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}Z"


class Repository:
    def __init__(self, store: LogStore):
        self.store = store
        self.models: dict[str, dict] = {}
        self.links: dict[str, dict] = {}
        self.instances: dict[str, dict] = {}
        self.children: dict[str, list[str]] = {}
        self._used_tokens: set[str] = set()
        for entry in store.entries:
            self._index(entry)

    # --- indexing ---

    def _index(self, entry: dict):
        kind = entry["type"]
        if kind == "model":
            self.models[entry["id"]] = entry
            self._used_tokens.add(entry["id"])
            if entry.get("parent"):
                self.children.setdefault(entry["parent"], []).append(entry["id"])
        elif kind == "link":
            self.links[entry["token"]] = entry
            self._used_tokens.add(entry["token"])
        elif kind == "instance":
            self.instances[entry["token"]] = entry
            self._used_tokens.add(entry["token"])

    def _append(self, entry: dict):
        self.store.append(entry)
        self._index(entry)

    def _new_token(self) -> str:
        while True:
            token = "".join(_secrets.choice(TOKEN_ALPHABET)
                            for _ in range(TOKEN_LENGTH))
            if token not in self._used_tokens:
                self._used_tokens.add(token)
                return token

    # --- models and links ---

    def save_shared(self, code: str, theme=None,
                    max_bytes: Optional[int] = None) -> tuple[str, Optional[str]]:
        """Store a model; returns (public token, private token or None).

        Raises ParseError / CodeTooLargeError / MalformedInputError.
        """
        kwargs = {"max_bytes": max_bytes} if max_bytes else {}
        model = parse(code, **kwargs)
        sig_names = {d.name for p in model.paragraphs if p.kind == "sig"
                     for d in p.body}
        field_names = {f.name for p in model.paragraphs if p.kind == "sig"
                       for d in p.body for f in d.fields}
        validate_theme(theme, sig_names, field_names)
        has_secrets = any(p.secret for p in model.paragraphs)

        model_id = self._new_token()
        self._append({
            "type": "model", "id": model_id, "parent": None, "root": model_id,
            "time": _now_iso(), "code": code, "command": None, "result": None,
            "theme": theme,
        })
        public = self._new_token()
        self._append({"type": "link", "token": public, "model": model_id,
                      "visibility": "public"})
        private = None
        if has_secrets:
            private = self._new_token()
            self._append({"type": "link", "token": private, "model": model_id,
                          "visibility": "private"})
        return public, private

    def link(self, token: str) -> dict:
        if token not in self.links:
            raise NotFoundError(f"unknown link token")
        return self.links[token]

    def model(self, model_id: str) -> dict:
        if model_id not in self.models:
            raise NotFoundError(f"unknown model id")
        return self.models[model_id]

    def load_by_token(self, token: str) -> dict:
        """View for a link: code (public view when the token is public),
        command index, theme, hasSecrets."""
        link = self.link(token)
        record = self.models[link["model"]]
        model = parse(record["code"])
        sm = split(model)
        public = link["visibility"] == "public"
        return {
            "code": sm.public_text if public else record["code"],
            "commandIndex": [c.wire() for c in command_index(model)],
            "theme": record.get("theme"),
            "hasSecrets": sm.has_secrets,
            "visibility": link["visibility"],
            "modelId": record["id"],
        }

    # --- executions / derivation tree ---

    def resolve_parent(self, parent_ref: str) -> dict:
        """A parent is a link token or a model record id."""
        if parent_ref in self.links:
            return self.models[self.links[parent_ref]["model"]]
        if parent_ref in self.models:
            return self.models[parent_ref]
        raise NotFoundError("unknown parent reference")

    def record_execution(self, parent_ref: str, code: str,
                         command_name: Optional[str], result: str) -> str:
        if result not in RESULT_VALUES:
            raise ValueError(f"result must be one of {RESULT_VALUES}")
        parent = self.resolve_parent(parent_ref)
        record_id = self._new_token()
        # timestamps stay non-decreasing along parent chains even if the
        # clock steps backwards
        time = max(_now_iso(), parent["time"])
        self._append({
            "type": "model", "id": record_id, "parent": parent["id"],
            "root": parent["root"], "time": time, "code": code,
            "command": command_name, "result": result, "theme": None,
        })
        return record_id

    def export_tree(self, token: str) -> dict:
        """Derivation-tree document for the private token's model."""
        link = self.link(token)
        if link["visibility"] != "private":
            raise ForbiddenError(
                "derivation trees are available through the private link only")
        root_id = self.models[link["model"]]["root"]
        nodes = [m for m in self.models.values() if m["root"] == root_id]
        nodes.sort(key=lambda m: (m["time"], m["id"] != root_id))
        return {
            "root": root_id,
            "nodes": [{
                "id": m["id"], "parent": m["parent"], "time": m["time"],
                "code": m["code"], "command": m["command"], "result": m["result"],
            } for m in nodes],
        }

    # --- instances ---

    def save_instance(self, model_id: str, command_name: str, skip: int,
                      instance: dict, theme, layout) -> str:
        if model_id not in self.models:
            raise NotFoundError("unknown model id")
        record = self.models[model_id]
        model = parse(record["code"])
        sig_names = {d.name for p in model.paragraphs if p.kind == "sig"
                     for d in p.body}
        field_names = {f.name for p in model.paragraphs if p.kind == "sig"
                       for d in p.body for f in d.fields}
        validate_theme(theme, sig_names, field_names)
        validate_layout(layout)
        token = self._new_token()
        self._append({
            "type": "instance", "token": token, "model": model_id,
            "command": command_name, "skip": skip, "instance": instance,
            "theme": theme, "layout": layout,
        })
        return token

    def load_instance(self, token: str) -> dict:
        if token not in self.instances:
            raise NotFoundError("unknown instance token")
        entry = self.instances[token]
        return {
            "model": entry["model"], "command": entry["command"],
            "skip": entry["skip"], "instance": entry["instance"],
            "theme": entry["theme"], "layout": entry["layout"],
        }
