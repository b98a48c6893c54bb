"""Global size bounds and search budgets."""
from __future__ import annotations

import os
from contextlib import contextmanager

DEFAULT_UNIVERSE_BOUND = 10**6
DEFAULT_CON_BOUND = 64
DEFAULT_ENUMERATION_BUDGET = 2_000_000
DEFAULT_SEARCH_BUDGET = 1_000_000
DEFAULT_ASSIGNMENT_BUDGET = 1_000_000

BUDGET_ENV = "ALGCALC_BUDGET"

_override: int | None = None


def universe_bound() -> int:
    """Largest universe any construction may produce.

    ``ALGCALC_BUDGET`` overrides the default when set.
    """
    if _override is not None:
        return _override
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_UNIVERSE_BOUND
    value = int(raw)
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {raw!r}")
    return value


@contextmanager
def universe_bound_override(value: int):
    global _override
    if value < 1:
        raise ValueError("the universe bound must be positive")
    saved, _override = _override, value
    try:
        yield
    finally:
        _override = saved
