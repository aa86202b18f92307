from __future__ import annotations

import time
from dataclasses import dataclass

import pytest

from a4f.finder import Budget, brute_force_oracle, solve_command
from a4f.lang import parse, resolve
from tests.helpers import gen_model_source

CORPUS_SIZE = 220
CORPUS_SEED_BASE = 1000


@dataclass
class CorpusEntry:
    seed: int
    source: str
    resolved: object
    solve_status: str
    oracle: object


@dataclass
class CorpusRun:
    entries: list[CorpusEntry]
    elapsed_s: float


@pytest.fixture(scope="session")
def corpus() -> CorpusRun:
    """Solver + oracle run over the generated small-scope corpus, shared by
    the invariant tests and the acceptance suite."""
    t0 = time.monotonic()
    entries = []
    for i in range(CORPUS_SIZE):
        seed = CORPUS_SEED_BASE + i
        src = gen_model_source(seed, with_secrets=True)
        resolved = resolve(parse(src))
        out = solve_command(resolved, "T0", budget=Budget(timeout_ms=30000))
        oracle = brute_force_oracle(resolved, "T0")
        entries.append(CorpusEntry(seed=seed, source=src, resolved=resolved,
                                   solve_status=out.status, oracle=oracle))
    return CorpusRun(entries=entries, elapsed_s=time.monotonic() - t0)
