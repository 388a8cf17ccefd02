import importlib
from typing import Callable, Optional

from ..exceptions import NotFoundError
from ..models.scheme import AppliesTo


HOUSEHOLD = "household"
INDIVIDUAL = "individual"


class Evaluator:
    """A deprivation rule pair registered under one key."""

    def __init__(self, key: str, applies_to: AppliesTo, description: str = ""):
        self.key = key
        self.applies_to = applies_to
        self.description = description
        self.household_rule: Optional[Callable] = None
        self.individual_rule: Optional[Callable] = None

    @property
    def propagates(self) -> bool:
        """Household value is copied to every adult member."""
        return self.applies_to is AppliesTo.BOTH and self.individual_rule is None

    def __repr__(self):
        return f"Evaluator({self.key!r}, {self.applies_to.value!r})"


EVALUATORS: dict[str, Evaluator] = {}


def evaluator(key: str, applies_to: str = "both", level: str = HOUSEHOLD, description: str = ""):
    """Register ``func`` as the household or individual rule of ``key``."""
    scope = AppliesTo(applies_to)

    def decorator(func):
        entry = EVALUATORS.get(key)
        if entry is None:
            entry = EVALUATORS[key] = Evaluator(key, scope, description or (func.__doc__ or "").strip())
        if level == HOUSEHOLD:
            entry.household_rule = func
        elif level == INDIVIDUAL:
            entry.individual_rule = func
        else:
            raise ValueError(f"Unknown evaluator level '{level}'")
        func._evaluator_info = {"key": key, "level": level}
        return func

    return decorator


def get_registry() -> dict[str, Evaluator]:
    # rules register themselves on import
    importlib.import_module("afmpi.deprivation.rules")
    return EVALUATORS


def get_evaluator(key: str) -> Evaluator:
    entry = get_registry().get(key)
    if entry is None:
        raise NotFoundError(f"Evaluator '{key}' is not registered", evaluator=key)
    return entry


def evaluator_keys() -> tuple[str, ...]:
    return tuple(get_registry())
