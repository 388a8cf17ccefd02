import io
import json
import logging
from fractions import Fraction
from pathlib import Path

import pytest

from afmpi.logger import logger
from afmpi.microdata import ingest
from afmpi.schemes import builtin_scheme
from afmpi.synthgen import mini_fixture, write_fixture

GOLDEN = Path(__file__).parent / "golden"


def golden(name: str) -> dict:
    with open(GOLDEN / name, encoding="utf-8") as f:
        return json.load(f)


def frac(text) -> Fraction:
    return Fraction(text)


def population_from_text(households_csv: str, persons_csv: str, **kwargs):
    return ingest(io.StringIO(households_csv), io.StringIO(persons_csv), **kwargs)


@pytest.fixture(scope="session")
def expected():
    return golden("mini_fixture.json")


@pytest.fixture
def mini_csv():
    return mini_fixture()


@pytest.fixture
def mini_pop(mini_csv):
    return population_from_text(*mini_csv)


@pytest.fixture
def mini_files(tmp_path):
    households, persons = write_fixture(tmp_path / "fixture")
    return str(households), str(persons)


@pytest.fixture
def household_scheme():
    return builtin_scheme("khas_household")


@pytest.fixture
def individual_scheme():
    return builtin_scheme("khas_individual")


@pytest.fixture(autouse=True)
def pinned_timestamp(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")


@pytest.fixture(autouse=True)
def package_logger():
    """Undo the handler the CLI installs so caplog sees package records."""
    yield logger
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)
    logger.propagate = True
