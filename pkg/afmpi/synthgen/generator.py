"""
Synthetic households.csv / persons.csv in the ingest column dictionary.

Every deprivation is drawn through a one-factor Gaussian copula: a household
carries a latent propensity ``z`` and a draw is deprived when
``sqrt(rho)·z + sqrt(1 - rho)·eps`` falls below the normal quantile of its
probability, so each marginal rate is the configured one while deprivations
cluster within households.
"""

from pathlib import Path
from typing import NamedTuple

import numpy as np
import pandas as pd
from scipy import stats

from ..logger import logger
from ..microdata.dictionary import ADULT_AGE, CHILD_AGE_RANGE, HOUSEHOLD_COLUMNS, NO_DURABLES, PERSON_COLUMNS
from ..models.records import (
    CookingFuel,
    Durable,
    FloorMaterial,
    HealthDecision,
    MaritalStatus,
    Sex,
    Toilet,
    WaterSource,
)
from ..utils.file_operations import write_text
from .config import GeneratorConfig

SPOUSE_SHARE = 0.85
CHILD_SHARE = 0.45
FOUR_WHEELER_SHARE = 0.05
LAND_SHARE = 0.5
RESIDENCE_WITH_LAND_SHARE = 0.7

HOUSEHOLD_DRAWS = ("electricity", "floor", "sanitation", "water", "cooking_fuel", "durables", "hh_assets")
TRAVEL_DRAWS = {
    "travel_market": "market_alone",
    "travel_health_facility": "health_facility_alone",
    "travel_natal_home": "natal_home_alone",
    "travel_outside_village": "outside_village_alone",
}

# household fields an incomplete household may lose; in scope for every built-in scheme
INCOMPLETE_FIELDS = ("has_electricity", "floor_material", "toilet", "water_source", "cooking_fuel")

# (deprived tokens, non-deprived tokens)
TOKENS = {
    "floor": ((FloorMaterial.EARTH_MUD,), (FloorMaterial.FINISHED, FloorMaterial.FINISHED, FloorMaterial.OTHER)),
    "sanitation": ((Toilet.NONE, Toilet.SHARED), (Toilet.PRIVATE,)),
    "water": (
        (WaterSource.SURFACE, WaterSource.TANKER, WaterSource.OTHER),
        (WaterSource.PIPED, WaterSource.BOREWELL, WaterSource.CLOSED_WELL, WaterSource.OPEN_WELL),
    ),
    "cooking_fuel": (
        (CookingFuel.WOOD, CookingFuel.CHARCOAL, CookingFuel.DUNG, CookingFuel.OTHER),
        (CookingFuel.LPG, CookingFuel.ELECTRICITY, CookingFuel.BIOGAS),
    ),
    "health_decision": ((HealthDecision.WITH_PERMISSION, HealthDecision.SOMEONE_ELSE), (HealthDecision.SELF,)),
}
DURABLES = tuple(d.value for d in Durable)


class GeneratedPopulation(NamedTuple):
    households_csv: str
    persons_csv: str


def _clipped(name: str, p: float) -> float:
    if p > 1.0:
        logger.warning(f"Derived probability {name}={p:.3f} clipped to 1")
        return 1.0
    return p


def _deprived(rng: np.random.Generator, z: np.ndarray, rho: float, p) -> np.ndarray:
    eps = rng.standard_normal(len(z))
    return np.sqrt(rho) * z + np.sqrt(1.0 - rho) * eps < stats.norm.ppf(p)


def _pick(rng: np.random.Generator, flags: np.ndarray, tokens) -> np.ndarray:
    deprived = np.array([t.value for t in tokens[0]], dtype=object)
    other = np.array([t.value for t in tokens[1]], dtype=object)
    draw = rng.integers(0, len(deprived) * len(other), len(flags))
    return np.where(flags, deprived[draw % len(deprived)], other[draw % len(other)])


def _flag(values: np.ndarray) -> np.ndarray:
    return np.where(values, "1", "0").astype(object)


def _durables(rng: np.random.Generator, deprived: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    counts = np.where(deprived, rng.integers(0, 2, len(deprived)), rng.integers(2, 5, len(deprived)))
    order = np.argsort(rng.random((len(deprived), len(DURABLES))), axis=1)
    owned = []
    for count, row in zip(counts, order):
        chosen = sorted(row[:count])
        owned.append(";".join(DURABLES[i] for i in chosen) if chosen else NO_DURABLES)
    four_wheeler = ~deprived & (rng.random(len(deprived)) < FOUR_WHEELER_SHARE)
    return np.array(owned, dtype=object), four_wheeler


def _households(rng, cfg: GeneratorConfig, z: np.ndarray, female_head: np.ndarray) -> tuple[pd.DataFrame, dict]:
    rho = cfg.intra_household_correlation
    rates = cfg.base_rates
    draws = {name: _deprived(rng, z, rho, getattr(rates, name)) for name in HOUSEHOLD_DRAWS}

    n = len(z)
    durables_owned, four_wheeler = _durables(rng, draws["durables"])
    land = ~draws["hh_assets"] & (rng.random(n) < LAND_SHARE)
    residence = ~draws["hh_assets"] & (~land | (rng.random(n) < RESIDENCE_WITH_LAND_SHARE))

    frame = pd.DataFrame(
        {
            "hh_id": [f"H{i + 1:06d}" for i in range(n)],
            "head_sex": np.where(female_head, Sex.FEMALE.value, Sex.MALE.value),
            "has_electricity": _flag(~draws["electricity"]),
            "floor_material": _pick(rng, draws["floor"], TOKENS["floor"]),
            "toilet": _pick(rng, draws["sanitation"], TOKENS["sanitation"]),
            "water_source": _pick(rng, draws["water"], TOKENS["water"]),
            "cooking_fuel": _pick(rng, draws["cooking_fuel"], TOKENS["cooking_fuel"]),
            "durables_owned": durables_owned,
            "owns_four_wheeler": _flag(four_wheeler),
            "owns_agri_land": _flag(land),
            "owns_residence": _flag(residence),
        }
    )
    return frame, {"land": land, "residence": residence}


def _marital(rng, n, head, spouse, child, female, has_spouse, age) -> np.ndarray:
    u = rng.random(n)
    lone_female_head = np.where(
        u < 0.6, MaritalStatus.WIDOWED.value, np.where(u < 0.85, MaritalStatus.DESERTED.value, MaritalStatus.NEVER_MARRIED.value)
    )
    lone_male_head = np.where(u < 0.7, MaritalStatus.NEVER_MARRIED.value, MaritalStatus.WIDOWED.value)
    other_adult = np.where(
        u < 0.3,
        MaritalStatus.NEVER_MARRIED.value,
        np.where(u < 0.9, MaritalStatus.CURRENTLY_MARRIED.value, MaritalStatus.WIDOWED.value),
    )
    return np.select(
        [spouse | (head & has_spouse), head & female, head, child | (age < 22)],
        [MaritalStatus.CURRENTLY_MARRIED.value, lone_female_head, lone_male_head, MaritalStatus.NEVER_MARRIED.value],
        default=other_adult,
    ).astype(object)


def _persons(rng, cfg: GeneratorConfig, z, sizes, female_head, hh_ids, assets) -> pd.DataFrame:
    rho = cfg.intra_household_correlation
    rates, gaps = cfg.base_rates, cfg.gender_gaps
    n_hh = len(sizes)
    hh_of = np.repeat(np.arange(n_hh), sizes)
    total = len(hh_of)
    starts = np.cumsum(sizes) - sizes
    pos = np.arange(total) - starts[hh_of]

    # roles
    has_spouse = (sizes >= 2) & (rng.random(n_hh) < SPOUSE_SHARE)
    head = pos == 0
    spouse = (pos == 1) & has_spouse[hh_of]
    child = ~head & ~spouse & (rng.random(total) < CHILD_SHARE)
    female = np.where(head, female_head[hh_of], np.where(spouse, ~female_head[hh_of], rng.random(total) < 0.5))

    head_age = 25 + (rng.random(n_hh) * 50).astype(np.int64)
    spouse_age = np.clip(head_age[hh_of] + rng.integers(-5, 6, total), ADULT_AGE, 90)
    child_age = (rng.random(total) * ADULT_AGE).astype(np.int64)
    other_age = ADULT_AGE + (rng.random(total) * 63).astype(np.int64)
    age = np.select([head, spouse, child], [head_age[hh_of], spouse_age, child_age], default=other_age)
    adult = age >= ADULT_AGE
    marital = _marital(rng, total, head, spouse, child, female, has_spouse[hh_of], age)

    # education
    schooling_female = _clipped("schooling+education_gap", rates.schooling + gaps.education_gap)
    p_school = np.where(female, schooling_female, rates.schooling)
    low_schooling = _deprived(rng, z[hh_of], rho, p_school)
    years = np.where(low_schooling, rng.integers(0, 5, total), rng.integers(5, 16, total))
    years = np.where(adult, years, np.clip(age - CHILD_AGE_RANGE[0], 0, None))

    low, high = CHILD_AGE_RANGE
    school_age = (age >= low) & (age <= high)
    not_enrolled = _deprived(rng, z[hh_of], rho, rates.child_enrollment)
    enrolled = np.where(school_age, _flag(~not_enrolled), "").astype(object)

    # ownership: a person can only own what the household owns
    assets_female = _clipped("individual_assets+individual_asset_gap", rates.individual_assets + gaps.individual_asset_gap)
    p_assets = np.where(female, assets_female, rates.individual_assets)
    owns_nothing = _deprived(rng, z[hh_of], rho, p_assets) | ~adult
    owns_residence = ~owns_nothing & assets["residence"][hh_of]
    owns_land = ~owns_nothing & assets["land"][hh_of]

    # first adult female per household, which is the head when she is female
    candidates = np.flatnonzero(adult & female)
    _, first = np.unique(hh_of[candidates], return_index=True)
    respondent = np.zeros(total, dtype=bool)
    respondent[candidates[first]] = True

    frame = pd.DataFrame(
        {
            "person_id": [f"{hh_ids[h]}-{p + 1:02d}" for h, p in zip(hh_of, pos)],
            "hh_id": np.asarray(hh_ids, dtype=object)[hh_of],
            "sex": np.where(female, Sex.FEMALE.value, Sex.MALE.value),
            "age": age.astype(str),
            "marital_status": marital,
            "education_years": years.astype(str),
            "owns_residence_any": _flag(owns_residence),
            "owns_agri_land_any": _flag(owns_land),
            "enrolled": enrolled,
            "is_female_respondent": _flag(respondent),
        }
    )

    for rate_name, column in TRAVEL_DRAWS.items():
        p = _clipped(f"{rate_name}+mobility_restriction_rate", getattr(rates, rate_name) + gaps.mobility_restriction_rate)
        restricted = _deprived(rng, z[hh_of], rho, p)
        frame[column] = np.where(respondent, _flag(~restricted), "").astype(object)
    no_say = _deprived(rng, z[hh_of], rho, rates.health_decision)
    frame["own_health_decision"] = np.where(respondent, _pick(rng, no_say, TOKENS["health_decision"]), "").astype(object)
    return frame


def _blank_incomplete(rng, cfg: GeneratorConfig, households: pd.DataFrame):
    n = len(households)
    count = cfg.n_incomplete if cfg.n_incomplete is not None else int(rng.binomial(n, cfg.missingness_rate))
    chosen = rng.choice(n, size=count, replace=False)
    fields = rng.integers(0, len(INCOMPLETE_FIELDS), count)
    for row, field in zip(chosen, fields):
        households.iat[row, households.columns.get_loc(INCOMPLETE_FIELDS[field])] = ""
    return count


def _csv(frame: pd.DataFrame, columns) -> str:
    return frame[[c.name for c in columns if c.name in frame.columns]].to_csv(index=False, lineterminator="\n")


def generate(cfg: GeneratorConfig) -> GeneratedPopulation:
    """Deterministic households and persons CSV text for ``cfg``."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    n = cfg.n_households

    sizes_support = np.array(cfg.sizes, dtype=np.int64)
    weights = np.array([cfg.household_size_distribution[s] for s in cfg.sizes], dtype=float)
    sizes = rng.choice(sizes_support, size=n, p=weights / weights.sum())
    female_head = rng.random(n) < cfg.female_head_share
    z = rng.standard_normal(n)

    households, assets = _households(rng, cfg, z, female_head)
    persons = _persons(rng, cfg, z, sizes, female_head, households["hh_id"].tolist(), assets)
    incomplete = _blank_incomplete(rng, cfg, households)

    logger.info(
        f"Generated {n} households, {len(persons)} persons, {incomplete} incomplete households (seed {cfg.seed})"
    )
    return GeneratedPopulation(_csv(households, HOUSEHOLD_COLUMNS), _csv(persons, PERSON_COLUMNS))


def write_population(cfg: GeneratorConfig, out_dir) -> tuple[Path, Path]:
    households_csv, persons_csv = generate(cfg)
    out_dir = Path(out_dir)
    return (
        write_text(out_dir / "households.csv", households_csv),
        write_text(out_dir / "persons.csv", persons_csv),
    )
