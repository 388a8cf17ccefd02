"""
Brute-force reference path. Works record by record on the pydantic views of a
population with its own rule table and plain Fraction sums; shares nothing
with the vectorised evaluation or scoring code.
"""

import math
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from ..config import config
from ..exceptions import EmptyPoorSet, EmptyPopulation, TooLarge
from ..microdata.population import Population
from ..models.records import (
    CookingFuel,
    FloorMaterial,
    HealthDecision,
    HouseholdRecord,
    PersonRecord,
    Sex,
    Toilet,
    Unit,
    WaterSource,
)
from ..models.scheme import MeasurementScheme
from .results import PovertyResult
from .scoring import check_cutoff


def _respondent(members: list[PersonRecord]) -> Optional[PersonRecord]:
    candidates = [p for p in members if p.is_female_respondent]
    if not candidates:
        return None
    return min(candidates, key=lambda p: (p.respondent_rank, p.person_id))


def _mobility(field: str):
    def rule(hh, members, person):
        if person is not None and person.sex != Sex.FEMALE:
            return False
        respondent = _respondent(members)
        if respondent is None or respondent.mobility is None:
            return False
        return getattr(respondent.mobility, field) is False

    return rule


def _health_decision(hh, members, person):
    if person is not None and person.sex != Sex.FEMALE:
        return False
    respondent = _respondent(members)
    if respondent is None or respondent.mobility is None:
        return False
    return respondent.mobility.own_health_decision in (HealthDecision.WITH_PERMISSION, HealthDecision.SOMEONE_ELSE)


def _hh_schooling(hh, members, person):
    for member in members:
        if member.is_adult and member.education_years is not None and member.education_years >= 5:
            return False
    return True


def _child_enrollment(hh, members, person):
    for child in hh.children_5_9:
        if child.enrolled is False:
            return True
    return False


def _durables(hh, members, person):
    owned = len(hh.durables_owned) if hh.durables_owned else 0
    return owned < 2 and not hh.owns_four_wheeler


RULES: dict[str, Callable[[HouseholdRecord, list, Optional[PersonRecord]], bool]] = {
    "hh_schooling": _hh_schooling,
    "child_enrollment": _child_enrollment,
    "own_schooling": lambda hh, members, person: person.education_years is not None and person.education_years < 5,
    "electricity": lambda hh, members, person: hh.has_electricity is False,
    "floor": lambda hh, members, person: hh.floor_material == FloorMaterial.EARTH_MUD,
    "sanitation": lambda hh, members, person: hh.toilet in (Toilet.NONE, Toilet.SHARED),
    "water": lambda hh, members, person: hh.water_source
    not in (WaterSource.PIPED, WaterSource.BOREWELL, WaterSource.CLOSED_WELL, WaterSource.OPEN_WELL),
    "cooking_fuel": lambda hh, members, person: hh.cooking_fuel
    not in (CookingFuel.ELECTRICITY, CookingFuel.LPG, CookingFuel.BIOGAS),
    "durables": _durables,
    "hh_productive_assets": lambda hh, members, person: not hh.owns_agri_land and not hh.owns_residence,
    "individual_productive_assets": lambda hh, members, person: not person.owns_residence_any
    and not person.owns_agri_land_any,
    "travel_market": _mobility("market_alone"),
    "travel_health_facility": _mobility("health_facility_alone"),
    "travel_natal_home": _mobility("natal_home_alone"),
    "travel_outside_village": _mobility("outside_village_alone"),
    "health_decision": _health_decision,
}


def _units(pop: Population, scheme: MeasurementScheme):
    """(unit_id, household, members, person) for every unit of the scheme's level."""
    n = pop.n_households if scheme.unit is Unit.HOUSEHOLD else len(pop.adults())
    if n > config.ORACLE_MAX_UNITS:
        raise TooLarge(
            f"Oracle limited to {config.ORACLE_MAX_UNITS} units, population has {n}",
            units=n,
            limit=config.ORACLE_MAX_UNITS,
        )
    members: dict[str, list[PersonRecord]] = {}
    for person in pop.person_records():
        members.setdefault(person.hh_id, []).append(person)

    units = []
    for hh in pop.household_records():
        people = members.get(hh.hh_id, [])
        if scheme.unit is Unit.HOUSEHOLD:
            units.append((hh.hh_id, hh, people, None))
        else:
            units.extend((p.person_id, hh, people, p) for p in people if p.is_adult)
    return units


def _deprivations(units, scheme: MeasurementScheme) -> list[dict[str, bool]]:
    rows = []
    for _, hh, people, person in units:
        rows.append({ind.id: bool(RULES[ind.evaluator_key](hh, people, person)) for ind in scheme.indicators})
    return rows


def oracle_scores(pop: Population, scheme: MeasurementScheme) -> dict[str, Fraction]:
    units = _units(pop, scheme)
    scores = {}
    for (unit_id, *_), row in zip(units, _deprivations(units, scheme)):
        total = Fraction(0)
        for ind in scheme.indicators:
            if row[ind.id]:
                total += ind.weight
        scores[unit_id] = total
    return scores


def oracle_measure(pop: Population, scheme: MeasurementScheme, k=None) -> PovertyResult:
    k = check_cutoff(scheme.poverty_cutoff_k if k is None else k)
    scores = oracle_scores(pop, scheme)
    n = len(scores)
    if n == 0:
        raise EmptyPopulation("Cannot measure poverty over zero units", scheme_id=scheme.id)

    denominator = math.lcm(*(ind.weight.denominator for ind in scheme.indicators))
    poor = [s >= k for s in scores.values()]
    censored = [s if p else Fraction(0) for s, p in zip(scores.values(), poor)]
    q = sum(poor)
    total = sum(censored, Fraction(0))
    return PovertyResult(
        scheme_id=scheme.id,
        k=k,
        n=n,
        q=q,
        H=Fraction(q, n),
        A=total / q if q else None,
        M0=total / n,
        unit_ids=tuple(scores),
        poor_flags=np.array(poor, dtype=bool),
        censored_numerators=np.array([int(c * denominator) for c in censored], dtype=object),
        denominator=denominator,
    )


def oracle_contributions(
    pop: Population,
    scheme: MeasurementScheme,
    k=None,
    subset: Optional[Callable[[HouseholdRecord, Optional[PersonRecord]], bool]] = None,
) -> dict[str, Fraction]:
    """w_j·CH_j / M0 per indicator over the units ``subset`` accepts."""
    k = check_cutoff(scheme.poverty_cutoff_k if k is None else k)
    units = _units(pop, scheme)
    rows = _deprivations(units, scheme)
    selected = [
        row for (_, hh, _, person), row in zip(units, rows) if subset is None or subset(hh, person)
    ]
    n = len(selected)
    weighted = {ind.id: Fraction(0) for ind in scheme.indicators}
    for row in selected:
        s = sum((ind.weight for ind in scheme.indicators if row[ind.id]), Fraction(0))
        if s >= k:
            for ind in scheme.indicators:
                if row[ind.id]:
                    weighted[ind.id] += ind.weight
    M0 = sum(weighted.values(), Fraction(0)) / n if n else Fraction(0)
    if M0 == 0:
        raise EmptyPoorSet("Nobody is poor in the selected units", scheme_id=scheme.id)
    return {ind_id: value / n / M0 for ind_id, value in weighted.items()}
