"""Resource budget shared by translation and solving.

A budget counts work steps and enforces a wall-clock deadline; it can also
be cancelled from another thread.  The step count is deterministic; the
deadline is checked every 256 steps to keep the common path cheap.
"""

from __future__ import annotations

import threading
import time
from typing import Optional

from ..errors import BudgetExceeded

DEFAULT_TIMEOUT_MS = 10_000
DEFAULT_MAX_STEPS = 10_000_000


class Budget:
    def __init__(self, timeout_ms: int = DEFAULT_TIMEOUT_MS,
                 max_steps: int = DEFAULT_MAX_STEPS,
                 cancel_event: Optional[threading.Event] = None):
        self.max_steps = max_steps
        self.deadline = time.monotonic() + timeout_ms / 1000.0
        self.steps = 0
        self.cancel_event = cancel_event

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.max_steps:
            raise BudgetExceeded(f"step budget of {self.max_steps} exhausted")
        if self.steps % 256 < n:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("wall-clock budget exhausted")
            if self.cancel_event is not None and self.cancel_event.is_set():
                raise BudgetExceeded("cancelled")
