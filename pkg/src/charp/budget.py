"""Step budgets for the exact kernels.

A budget counts coefficient operations.  The default is 10**7 and can be
overridden with the ``CHARP_BUDGET`` environment variable.
"""

from __future__ import annotations

import os

from .errors import ResourceExceeded

DEFAULT_STEPS = 10**7


def default_steps() -> int:
    raw = os.environ.get("CHARP_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"CHARP_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise ValueError("CHARP_BUDGET must be positive")
        return value
    return DEFAULT_STEPS


class Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = default_steps() if limit is None else limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise ResourceExceeded(f"step budget of {self.limit} exceeded")


def ensure(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
