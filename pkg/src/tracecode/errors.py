"""Exception types shared across the package."""

import os

DEFAULT_BUDGET = 10**8
BUDGET_ENV_VAR = "TRACECODE_BUDGET"


class FieldError(ValueError):
    """Invalid field parameters, modulus, or element literal."""


class ReducibleModulusError(FieldError):
    pass


class NotRationalError(ValueError):
    """A cyclotomic integer was expected to lie in Z but does not."""


class BudgetExceededError(RuntimeError):
    """A brute-force computation would exceed the operation budget."""

    def __init__(self, what: str, cost: int, budget: int, hint: str = ""):
        msg = f"{what} needs ~{cost:.3g} operations, budget is {budget:.3g}"
        if hint:
            msg += f"; {hint}"
        super().__init__(msg)
        self.cost = cost
        self.budget = budget


class HypothesisError(ValueError):
    """Parameters fall outside the range where the closed forms are claimed."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw:
        return int(float(raw))
    return DEFAULT_BUDGET


def check_budget(what: str, cost: int, budget: int | None, hint: str = "") -> None:
    if budget is None:
        budget = default_budget()
    if cost > budget:
        raise BudgetExceededError(what, cost, budget, hint)
