"""Enumeration budgets.

Every exhaustive search in the engine is guarded by a candidate-count
budget so that a typo'd input degrades into a clean error instead of an
hour of spinning.  The default admits anything a desk run should need;
callers may pass a larger budget explicitly.
"""

from __future__ import annotations

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(Exception):
    """Raised when an enumeration would visit more candidates than allowed."""

    def __init__(self, what: str, count: int, budget: int):
        self.what = what
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: {count} candidates exceeds budget {budget}")


def guard(what: str, count: int, budget: int | None) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if count > limit:
        raise BudgetExceeded(what, count, limit)
