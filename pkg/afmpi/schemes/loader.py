import json
import os
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

from pydantic import ValidationError

from ..exceptions import NotFoundError, SchemeInvalid, Violation
from ..logger import logger
from ..models.records import Unit
from ..models.scheme import AppliesTo, DimensionSpec, IndicatorSpec, MeasurementScheme, scheme_violations
from ..utils.file_operations import sha256_text
from ..utils.rational import rational_pair, to_fraction

BUILTIN_SCHEMES = ("khas_household", "khas_individual")


def _read_document(source) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    if isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
        origin = "<text>"
    else:
        origin = os.fspath(source)
        if not os.path.exists(origin):
            raise NotFoundError(f"Scheme file '{origin}' not found", path=origin)
        with open(origin, encoding="utf-8") as f:
            text = f.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemeInvalid.single("structure", f"{origin} is not valid JSON: {e}")
    if not isinstance(document, dict):
        raise SchemeInvalid.single("structure", f"{origin} must hold a JSON object")
    return document


def _weight(raw: Any, indicator_id: str, violations: list[Violation]):
    try:
        return to_fraction(raw)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        violations.append(Violation("structure", f"indicator '{indicator_id}' has unreadable weight {raw!r}: {e}"))
        return None


def _draft_violations(document: Mapping, dimensions, indicators, k, skipped: bool) -> list[Violation]:
    """Model-level violations of a document that already failed parsing."""
    if "unit" not in document:
        return []
    try:
        draft = MeasurementScheme.model_construct(
            id=document.get("id"),
            unit=Unit(document.get("unit")),
            dimensions=tuple(DimensionSpec(**dim) for dim in dimensions),
            indicators=tuple(IndicatorSpec(**ind) for ind in indicators),
            poverty_cutoff_k=Fraction(1) if k is None else k,
            custom=True,
        )
    except (ValueError, ValidationError) as e:
        return [Violation("structure", str(e).splitlines()[0])]
    found = scheme_violations(draft)
    if skipped:
        # the sum is meaningless with indicators missing
        found = [v for v in found if v.reason != "weight_sum"]
    return found


def scheme_from_document(document: Mapping) -> MeasurementScheme:
    """Build a scheme from its document form; every violation is reported at once."""
    from ..deprivation.registry import get_registry

    scheme_id = document.get("id")
    violations: list[Violation] = []
    for key in ("id", "unit", "k", "dimensions"):
        if key not in document:
            violations.append(Violation("structure", f"document has no '{key}'"))

    k = None
    if "k" in document:
        try:
            k = to_fraction(document["k"])
        except (ValueError, TypeError, ZeroDivisionError) as e:
            violations.append(Violation("cutoff", f"unreadable poverty cutoff {document['k']!r}: {e}"))

    raw_dimensions = document.get("dimensions", [])
    if not isinstance(raw_dimensions, list):
        violations.append(Violation("structure", "'dimensions' must be a list"))
        raise SchemeInvalid(violations, scheme_id=scheme_id)

    given = [
        "weight" in ind
        for dim in raw_dimensions
        if isinstance(dim, Mapping)
        for ind in (dim.get("indicators") or [])
        if isinstance(ind, Mapping)
    ]
    equal_split = not any(given)
    if any(given) and not all(given):
        violations.append(
            Violation("partial_weights", f"{given.count(False)} of {len(given)} indicators have no weight")
        )

    registry = get_registry()
    dimensions, indicators = [], []
    skipped = False
    n_dimensions = len(raw_dimensions)
    for dim in raw_dimensions:
        if not isinstance(dim, Mapping) or "id" not in dim:
            violations.append(Violation("structure", f"dimension entry {dim!r} has no id"))
            continue
        raw_indicators = [ind for ind in (dim.get("indicators") or []) if isinstance(ind, Mapping)]
        ids = []
        for ind in raw_indicators:
            if "id" not in ind or "evaluator" not in ind:
                violations.append(Violation("structure", f"indicator entry {dict(ind)!r} needs id and evaluator"))
                skipped = True
                continue
            if equal_split:
                weight = Fraction(1, n_dimensions * len(raw_indicators))
            elif "weight" not in ind:
                skipped = True
                continue
            else:
                weight = _weight(ind["weight"], ind["id"], violations)
                if weight is None:
                    skipped = True
                    continue
            entry = registry.get(ind["evaluator"])
            ids.append(ind["id"])
            indicators.append(
                dict(
                    id=ind["id"],
                    dimension_id=dim["id"],
                    weight=weight,
                    evaluator_key=ind["evaluator"],
                    applies_to=entry.applies_to if entry else AppliesTo.BOTH,
                )
            )
        dimensions.append(dict(id=dim["id"], name=dim.get("name", dim["id"]), indicator_ids=tuple(ids)))

    if violations:
        raise SchemeInvalid(
            violations + _draft_violations(document, dimensions, indicators, k, skipped),
            scheme_id=scheme_id,
        )

    custom = bool(document.get("custom", False))
    unequal = [
        dim["id"]
        for dim in dimensions
        if len({ind["weight"] for ind in indicators if ind["dimension_id"] == dim["id"]}) > 1
    ]
    if unequal and not custom:
        logger.warning(
            f"Scheme '{scheme_id}' has unequal weights within {', '.join(unequal)}; flagged as custom"
        )
        custom = True

    try:
        return MeasurementScheme(
            id=scheme_id,
            unit=document["unit"],
            dimensions=tuple(DimensionSpec(**dim) for dim in dimensions),
            indicators=tuple(IndicatorSpec(**ind) for ind in indicators),
            poverty_cutoff_k=k,
            custom=custom,
            base_id=document.get("base_id"),
            excluded=tuple(sorted(document.get("excluded", ()))),
        )
    except ValidationError as e:
        raise SchemeInvalid(
            [Violation("structure", f"{'.'.join(map(str, err['loc']))}: {err['msg']}") for err in e.errors()],
            scheme_id=scheme_id,
        )


def load_scheme(source) -> MeasurementScheme:
    """Load a scheme from a path, JSON text or a mapping."""
    return scheme_from_document(_read_document(source))


def scheme_to_document(scheme: MeasurementScheme) -> dict:
    document = {
        "id": scheme.id,
        "unit": scheme.unit.value,
        "k": rational_pair(scheme.poverty_cutoff_k),
        "custom": scheme.custom,
        "dimensions": [
            {
                "id": dim.id,
                "name": dim.name,
                "indicators": [
                    {
                        "id": ind_id,
                        "evaluator": scheme.indicator(ind_id).evaluator_key,
                        "weight": rational_pair(scheme.indicator(ind_id).weight),
                    }
                    for ind_id in dim.indicator_ids
                ],
            }
            for dim in scheme.dimensions
        ],
    }
    if scheme.base_id is not None:
        document["base_id"] = scheme.base_id
    if scheme.excluded:
        document["excluded"] = list(scheme.excluded)
    return document


def scheme_hash(scheme: MeasurementScheme) -> str:
    canonical = json.dumps(scheme_to_document(scheme), sort_keys=True, separators=(",", ":"))
    return sha256_text(canonical)


@lru_cache(maxsize=None)
def builtin_scheme(name: str) -> MeasurementScheme:
    if name not in BUILTIN_SCHEMES:
        raise NotFoundError(f"No built-in scheme '{name}'", scheme=name, available=list(BUILTIN_SCHEMES))
    text = resources.files("afmpi.schemes").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return load_scheme(json.loads(text))
