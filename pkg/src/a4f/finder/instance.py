"""Instances: the finite valuations returned by analysis.

The wire form puts atom and tuple lists in lexicographic order and keys in
sorted order, so serializations are stable byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class Instance:
    sigs: dict[str, list[str]]
    fields: dict[str, list[tuple[str, ...]]]
    universe: list[str]
    _sig_sets: Optional[dict] = field(default=None, compare=False, repr=False)
    _field_sets: Optional[dict] = field(default=None, compare=False, repr=False)

    @staticmethod
    def build(sigs: dict[str, list[str]], fields: dict[str, list[tuple[str, ...]]],
              universe: list[str]) -> "Instance":
        return Instance(
            sigs={k: sorted(sigs[k]) for k in sorted(sigs)},
            fields={k: sorted(fields[k]) for k in sorted(fields)},
            universe=sorted(universe))

    def sig_set(self, name: str) -> frozenset:
        if self._sig_sets is None:
            self._sig_sets = {k: frozenset((a,) for a in v)
                              for k, v in self.sigs.items()}
        return self._sig_sets[name]

    def field_set(self, name: str) -> frozenset:
        if self._field_sets is None:
            self._field_sets = {k: frozenset(map(tuple, v))
                                for k, v in self.fields.items()}
        return self._field_sets[name]

    def universe_set(self) -> frozenset:
        return frozenset((a,) for a in self.universe)

    def wire(self) -> dict:
        return {
            "sigs": {k: list(v) for k, v in self.sigs.items()},
            "fields": {k: [list(t) for t in v] for k, v in self.fields.items()},
            "universe": list(self.universe),
        }

    @staticmethod
    def from_wire(doc: dict) -> "Instance":
        return Instance.build(
            sigs={k: list(v) for k, v in doc["sigs"].items()},
            fields={k: [tuple(t) for t in v] for k, v in doc["fields"].items()},
            universe=list(doc["universe"]))


@dataclass
class SolveOutcome:
    """Result of a bounded analysis: sat/unsat/error/limit."""
    status: str                      # "sat" | "unsat" | "error" | "limit"
    instance: Optional[Instance] = None
    message: Optional[str] = None

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"
