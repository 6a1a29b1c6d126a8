"""Shared exception types and the enumeration budget knob."""

from __future__ import annotations

DEFAULT_BUDGET = 10**9


class PreconditionError(ValueError):
    """An operation was invoked outside its stated preconditions."""


class BudgetExceededError(RuntimeError):
    """The estimated enumeration cost exceeds the configured budget."""

    def __init__(self, what: str, estimated: int, budget: int):
        super().__init__(f"{what}: estimated cost {estimated} exceeds budget {budget}")
        self.what = what
        self.estimated = estimated
        self.budget = budget


def check_budget(estimated: int, budget: int | None, what: str) -> None:
    """Refuse up front when an enumeration would take more than `budget` steps."""
    limit = DEFAULT_BUDGET if budget is None else budget
    if estimated > limit:
        raise BudgetExceededError(what, estimated, limit)
