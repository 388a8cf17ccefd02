from .registry import EVALUATORS, Evaluator, evaluator, evaluator_keys, get_evaluator, get_registry
from .matrix import (
    DeprivationMatrix,
    deprivation_rates,
    evaluate,
    evaluate_household,
    evaluate_individual,
    resolve_subset,
)
