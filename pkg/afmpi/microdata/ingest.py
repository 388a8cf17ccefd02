import json
from enum import Enum
from typing import Iterable, Optional

import pandas as pd

from ..exceptions import IngestError, IntegrityError
from ..logger import logger
from ..models.base_model import BaseModel
from ..utils.file_operations import source_hash, source_name
from .dictionary import (
    ADULT_AGE,
    ADULTS,
    BOOL,
    BOOL_TOKENS,
    CHILD_AGE_RANGE,
    CHILDREN_5_9,
    ENUM,
    EVALUATOR_FIELDS,
    FEMALE_RESPONDENTS,
    HOUSEHOLD_COLUMNS,
    ID,
    INT,
    INT_PATTERN,
    MOBILITY_COLUMNS,
    NO_DURABLES,
    PERSON_COLUMNS,
    SET,
    Column,
    fields_in_scope,
)


class MissingDataPolicy(str, Enum):
    LISTWISE = "listwise"
    PER_ANALYSIS = "per_analysis"


class Provenance(BaseModel):
    households_source: str
    persons_source: str
    households_sha256: Optional[str] = None
    persons_sha256: Optional[str] = None
    policy: MissingDataPolicy
    evaluator_keys: tuple[str, ...]
    households_read: int
    persons_read: int
    households_retained: int
    persons_retained: int
    dropped: dict[str, str]
    drop_counts: dict[str, int]

    @property
    def households_dropped(self) -> int:
        return len(self.dropped)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _row_number(mask: pd.Series) -> int:
    # header is line 1
    return int(mask[mask].index[0]) + 2


def read_table(source, columns: tuple[Column, ...], table: str) -> pd.DataFrame:
    """Read one CSV as strings, check the header and every token."""
    name = source_name(source)
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False, na_filter=False, encoding="utf-8")
    except FileNotFoundError:
        raise
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError, ValueError) as e:
        raise IngestError(f"Could not parse {table} from {name}: {e}", source=name)

    frame.columns = [str(c).strip() for c in frame.columns]
    known = {column.name for column in columns}
    extra = [c for c in frame.columns if c not in known]
    if extra:
        logger.warning(f"Ignoring unknown {table} columns: {', '.join(extra)}")
        frame = frame.drop(columns=extra)

    for column in columns:
        if column.name not in frame.columns:
            if column.optional_header:
                frame[column.name] = ""
                continue
            raise IngestError(f"Missing {table} column '{column.name}'", row=1, column=column.name, source=name)

    frame = frame[[column.name for column in columns]].apply(lambda s: s.str.strip())
    for column in columns:
        values = frame[column.name]
        if column.default is not None:
            values = values.mask(values == "", column.default)
            frame[column.name] = values
        blank = values == ""
        if column.required_value and blank.any():
            raise IngestError(
                f"Blank value in required {table} column '{column.name}'",
                row=_row_number(blank),
                column=column.name,
                source=name,
            )
        bad = ~blank & ~_valid_tokens(column, values)
        if bad.any():
            row = _row_number(bad)
            raise IngestError(
                f"Invalid {table} value {values[bad].iloc[0]!r} in column '{column.name}'",
                row=row,
                column=column.name,
                source=name,
            )
    return frame


def _valid_tokens(column: Column, values: pd.Series) -> pd.Series:
    if column.kind == ID:
        return pd.Series(True, index=values.index)
    if column.kind == BOOL:
        return values.isin(list(BOOL_TOKENS))
    if column.kind == INT:
        return values.str.fullmatch(INT_PATTERN).fillna(False).astype(bool)
    if column.kind == ENUM:
        return values.isin(column.tokens)
    if column.kind == SET:
        allowed = set(column.tokens)

        def valid(value: str) -> bool:
            if value == NO_DURABLES:
                return True
            parts = value.split(";")
            return len(parts) == len(set(parts)) and all(p in allowed for p in parts)

        return values.map(valid).astype(bool)
    raise ValueError(f"Unknown column kind '{column.kind}'")


def _typed(frame: pd.DataFrame, columns: tuple[Column, ...]) -> pd.DataFrame:
    typed = {}
    for column in columns:
        values = frame[column.name]
        blank = values == ""
        if column.kind == BOOL:
            typed[column.name] = values.map({"1": True, "0": False, "": pd.NA}).astype("boolean")
        elif column.kind == INT:
            typed[column.name] = pd.to_numeric(values.mask(blank)).astype("Int64")
        else:
            typed[column.name] = values.mask(blank).astype("string")
    return pd.DataFrame(typed, index=frame.index)


def check_integrity(households: pd.DataFrame, persons: pd.DataFrame):
    dup = households["hh_id"].duplicated()
    if dup.any():
        raise IntegrityError(
            f"Duplicate hh_id '{households['hh_id'][dup].iloc[0]}'", row=_row_number(dup), column="hh_id"
        )
    dup = persons["person_id"].duplicated()
    if dup.any():
        raise IntegrityError(
            f"Duplicate person_id '{persons['person_id'][dup].iloc[0]}'", row=_row_number(dup), column="person_id"
        )
    orphan = ~persons["hh_id"].isin(households["hh_id"])
    if orphan.any():
        raise IntegrityError(
            f"Person '{persons['person_id'][orphan].iloc[0]}' refers to unknown household "
            f"'{persons['hh_id'][orphan].iloc[0]}'",
            row=_row_number(orphan),
            column="hh_id",
        )
    respondent = persons["is_female_respondent"] == "1"
    male_respondent = respondent & (persons["sex"] != "female")
    if male_respondent.any():
        raise IntegrityError(
            f"Person '{persons['person_id'][male_respondent].iloc[0]}' is flagged female respondent but is not female",
            row=_row_number(male_respondent),
            column="is_female_respondent",
        )
    answered = (persons[list(MOBILITY_COLUMNS)] != "").any(axis=1)
    stray = answered & ~respondent
    if stray.any():
        raise IntegrityError(
            f"Person '{persons['person_id'][stray].iloc[0]}' has mobility answers but is not a female respondent",
            row=_row_number(stray),
            column="is_female_respondent",
        )


def drop_reasons(households: pd.DataFrame, persons: pd.DataFrame, evaluator_keys: Iterable[str]) -> pd.Series:
    """Reason code per household id, ``None`` for households that are kept."""
    reasons = pd.Series(None, index=households["hh_id"].to_numpy(), dtype=object)
    ages = pd.to_numeric(persons["age"])
    scopes = {
        ADULTS: ages >= ADULT_AGE,
        CHILDREN_5_9: ages.between(*CHILD_AGE_RANGE),
        FEMALE_RESPONDENTS: persons["is_female_respondent"] == "1",
    }

    for ref in fields_in_scope(evaluator_keys):
        if ref.table == "households":
            missing_ids = households.loc[households[ref.column] == "", "hh_id"]
        else:
            mask = scopes.get(ref.scope, True) & (persons[ref.column] == "")
            missing_ids = persons.loc[mask, "hh_id"]
        fill = reasons.index.isin(missing_ids.to_numpy()) & reasons.isna().to_numpy()
        reasons[fill] = f"missing:{ref.column}"

    no_members = ~reasons.index.isin(persons["hh_id"].to_numpy()) & reasons.isna().to_numpy()
    reasons[no_members] = "no_members"
    return reasons


def scope_keys(policy: MissingDataPolicy, schemes=None) -> tuple[str, ...]:
    if policy is MissingDataPolicy.LISTWISE or not schemes:
        return tuple(EVALUATOR_FIELDS)
    keys = []
    for scheme in schemes:
        for indicator in scheme.indicators:
            if indicator.evaluator_key not in keys:
                keys.append(indicator.evaluator_key)
    return tuple(keys)


def ingest(households, persons, policy=MissingDataPolicy.LISTWISE, schemes=None):
    """
    Read, validate and join the two CSV sources into a ``Population``.

    Households with a missing in-scope field, or without members, are dropped
    together with all their members. ``policy`` decides which fields are in
    scope: every registered evaluator's (``listwise``) or only those of
    ``schemes`` (``per_analysis``).
    """
    from .population import Population

    policy = MissingDataPolicy(policy)
    hh_raw = read_table(households, HOUSEHOLD_COLUMNS, "households")
    person_raw = read_table(persons, PERSON_COLUMNS, "persons")
    check_integrity(hh_raw, person_raw)

    keys = scope_keys(policy, schemes)
    reasons = drop_reasons(hh_raw, person_raw, keys)
    keep_ids = reasons.index[reasons.isna().to_numpy()]

    hh_kept = hh_raw[hh_raw["hh_id"].isin(keep_ids)]
    person_kept = person_raw[person_raw["hh_id"].isin(keep_ids)]

    hh_frame = _typed(hh_kept, HOUSEHOLD_COLUMNS).sort_values("hh_id", kind="mergesort")
    person_frame = _typed(person_kept, PERSON_COLUMNS).sort_values(["hh_id", "person_id"], kind="mergesort")

    dropped = {hh_id: reason for hh_id, reason in reasons.dropna().sort_index().items()}
    drop_counts: dict[str, int] = {}
    for reason in dropped.values():
        drop_counts[reason] = drop_counts.get(reason, 0) + 1

    provenance = Provenance(
        households_source=source_name(households),
        persons_source=source_name(persons),
        households_sha256=source_hash(households),
        persons_sha256=source_hash(persons),
        policy=policy,
        evaluator_keys=keys,
        households_read=len(hh_raw),
        persons_read=len(person_raw),
        households_retained=len(hh_frame),
        persons_retained=len(person_frame),
        dropped=dropped,
        drop_counts=dict(sorted(drop_counts.items())),
    )
    logger.info(
        f"Ingested {provenance.households_read} households: retained {provenance.households_retained}, "
        f"dropped {provenance.households_dropped} {provenance.drop_counts}"
    )
    return Population(hh_frame, person_frame, provenance)
