"""Search budgets for the enumerative operations.

Every exhaustive search (structure enumeration, sentence generation,
interpretation sweeps) counts candidates against a budget and raises
BudgetError instead of running away.  The default can be overridden with
the GRADEDMT_BUDGET environment variable.
"""

import os

from .errors import BudgetError

DEFAULT_BUDGET = 5_000_000

_ENV_VAR = "GRADEDMT_BUDGET"


def search_budget() -> int:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise BudgetError(f"{_ENV_VAR} must be an integer, got {raw!r}")
    if value <= 0:
        raise BudgetError(f"{_ENV_VAR} must be positive, got {value}")
    return value


def check_budget(required: int, what: str, budget: int | None = None) -> None:
    """Raise BudgetError when `required` candidates exceed the budget."""
    limit = search_budget() if budget is None else budget
    if required > limit:
        raise BudgetError(
            f"{what} needs {required} candidates, budget is {limit}",
            required=required,
            budget=limit,
        )


class BudgetMeter:
    """Incremental counter for searches whose size is not known up front."""

    def __init__(self, what: str, budget: int | None = None):
        self.what = what
        self.limit = search_budget() if budget is None else budget
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetError(
                f"{self.what} exceeded budget of {self.limit}",
                required=self.used,
                budget=self.limit,
            )
