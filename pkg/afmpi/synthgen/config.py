import json
import os
from importlib import resources
from typing import Optional

from pydantic import ValidationError, model_validator

from ..exceptions import ConfigError
from ..models.base_model import BaseModel

MAX_HOUSEHOLD_SIZE = 10


class BaseRates(BaseModel):
    """Deprivation probabilities. Person-level rates apply to men; women add the gender gaps."""

    schooling: float = 0.25
    child_enrollment: float = 0.02
    electricity: float = 0.1
    floor: float = 0.2
    sanitation: float = 0.6
    water: float = 0.12
    cooking_fuel: float = 0.75
    durables: float = 0.3
    hh_assets: float = 0.17
    individual_assets: float = 0.5
    travel_market: float = 0.35
    travel_health_facility: float = 0.43
    travel_natal_home: float = 0.37
    travel_outside_village: float = 0.44
    health_decision: float = 0.015


class GenderGaps(BaseModel):
    education_gap: float = 0.0
    individual_asset_gap: float = 0.0
    mobility_restriction_rate: float = 0.0


class GeneratorConfig(BaseModel):
    seed: int
    n_households: int
    household_size_distribution: dict[int, float] = {1: 0.05, 2: 0.15, 3: 0.2, 4: 0.25, 5: 0.2, 6: 0.1, 7: 0.05}
    female_head_share: float = 0.2
    base_rates: BaseRates = BaseRates()
    gender_gaps: GenderGaps = GenderGaps()
    missingness_rate: float = 0.0
    n_incomplete: Optional[int] = None
    intra_household_correlation: float = 0.3

    @model_validator(mode="after")
    def _check(self) -> "GeneratorConfig":
        problems = config_problems(self)
        if problems:
            raise ConfigError("; ".join(problems), problems=problems)
        return self

    @property
    def sizes(self) -> list[int]:
        return sorted(self.household_size_distribution)


def _probability(name: str, value: float, problems: list[str]):
    if not 0.0 <= value <= 1.0:
        problems.append(f"{name} must lie in [0, 1], got {value}")


def config_problems(cfg: GeneratorConfig) -> list[str]:
    problems: list[str] = []
    if not 0 <= cfg.seed < 2**64:
        problems.append(f"seed must lie in [0, 2^64), got {cfg.seed}")
    if cfg.n_households < 1:
        problems.append(f"n_households must be at least 1, got {cfg.n_households}")

    sizes = cfg.household_size_distribution
    for size, weight in sizes.items():
        if not 1 <= size <= MAX_HOUSEHOLD_SIZE:
            problems.append(f"household size {size} outside 1..{MAX_HOUSEHOLD_SIZE}")
        if weight < 0:
            problems.append(f"household size {size} has negative weight {weight}")
    if not any(weight > 0 for size, weight in sizes.items() if 1 <= size <= MAX_HOUSEHOLD_SIZE):
        problems.append("household_size_distribution puts no weight on any size 1..10")

    _probability("female_head_share", cfg.female_head_share, problems)
    _probability("missingness_rate", cfg.missingness_rate, problems)
    _probability("intra_household_correlation", cfg.intra_household_correlation, problems)
    for name, value in cfg.base_rates.model_dump().items():
        _probability(f"base_rates.{name}", value, problems)
    for name, value in cfg.gender_gaps.model_dump().items():
        _probability(f"gender_gaps.{name}", value, problems)

    if cfg.n_incomplete is not None and not 0 <= cfg.n_incomplete <= cfg.n_households:
        problems.append(f"n_incomplete must lie in [0, n_households], got {cfg.n_incomplete}")
    return problems


def _parse(document: dict, origin: str) -> GeneratorConfig:
    try:
        return GeneratorConfig(**document)
    except ValidationError as e:
        details = [f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()]
        raise ConfigError(f"Invalid generator config {origin}: {'; '.join(details)}", problems=details)


def load_generator_config(path) -> GeneratorConfig:
    origin = os.fspath(path)
    with open(origin, encoding="utf-8") as f:
        try:
            document = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Generator config {origin} is not valid JSON: {e}", path=origin)
    return _parse(document, origin)


def _shipped(name: str) -> GeneratorConfig:
    text = resources.files("afmpi.synthgen").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return _parse(json.loads(text), name)


def demo_config() -> GeneratorConfig:
    """Small gendered population where individual poverty clearly exceeds household poverty."""
    return _shipped("demo_config")


def khas_like_config() -> GeneratorConfig:
    """Rates shaped like the published KHAS household and per-sex deprivation profile."""
    return _shipped("khas_like_config")
