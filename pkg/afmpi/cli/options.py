import errno
import os
from fractions import Fraction
from typing import Iterable, Optional

import click

from ..config import config
from ..engine.scoring import check_cutoff
from ..exceptions import NotFoundError, SchemeMismatch
from ..logger import logger
from ..microdata import MissingDataPolicy, Population, ingest
from ..models.scheme import MeasurementScheme
from ..report import ReportWriter, build_manifest
from ..schemes import BUILTIN_SCHEMES, builtin_scheme, exclude_dimension, exclude_indicator, load_scheme

DEFAULT_SCHEMES = {"household": "khas_household", "individual": "khas_individual"}
LEVELS = tuple(DEFAULT_SCHEMES)


def _apply(func, options: Iterable):
    for option in reversed(list(options)):
        func = option(func)
    return func


def population_options(func):
    return _apply(
        func,
        [
            click.option("--households", required=True, type=click.Path(dir_okay=False), help="households.csv"),
            click.option("--persons", required=True, type=click.Path(dir_okay=False), help="persons.csv"),
            click.option(
                "--policy",
                type=click.Choice([p.value for p in MissingDataPolicy]),
                default=lambda: config.MISSING_DATA_POLICY,
                show_default="AFMPI_MISSING_DATA_POLICY or listwise",
                help="Which missing fields drop a household",
            ),
        ],
    )


def exclusion_options(func):
    return _apply(
        func,
        [
            click.option("--k", "k", default=None, help="Poverty cutoff, e.g. 3/10"),
            click.option("--exclude-dimension", multiple=True, help="Drop a dimension and re-split its weight"),
            click.option("--exclude-indicator", multiple=True, help="Drop an indicator within its dimension"),
        ],
    )


def output_options(func):
    return _apply(
        func,
        [
            click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory"),
            click.option("--format", "fmt", type=click.Choice(["csv", "json", "both"]), default="both"),
        ],
    )


def apply_exclusions(
    scheme: MeasurementScheme,
    dimensions: Iterable[str] = (),
    indicators: Iterable[str] = (),
    skip_unknown: bool = False,
) -> MeasurementScheme:
    for dimension_id in dimensions:
        if skip_unknown and dimension_id not in scheme.dimension_ids:
            continue
        scheme = exclude_dimension(scheme, dimension_id)
    for indicator_id in indicators:
        if skip_unknown and indicator_id not in scheme.indicator_ids:
            continue
        scheme = exclude_indicator(scheme, indicator_id)
    return scheme


def load_named_scheme(source: Optional[str], level: str) -> MeasurementScheme:
    source = source or DEFAULT_SCHEMES[level]
    scheme = builtin_scheme(source) if source in BUILTIN_SCHEMES else load_scheme(source)
    if scheme.unit.value != level:
        raise SchemeMismatch(
            f"Scheme '{scheme.id}' measures {scheme.unit.value}s, not {level}s", scheme_id=scheme.id, level=level
        )
    return scheme


def resolve_scheme(source: Optional[str], level: str, dimensions=(), indicators=()) -> MeasurementScheme:
    return apply_exclusions(load_named_scheme(source, level), dimensions, indicators)


def resolve_scheme_pair(household_source, individual_source, dimensions=(), indicators=()):
    """
    Household and individual schemes with the same exclusions applied to both;
    an id only one scheme knows is skipped there.
    """
    household = load_named_scheme(household_source, "household")
    individual = load_named_scheme(individual_source, "individual")
    for known in (dimensions, indicators):
        for item in known:
            ids = set(household.dimension_ids) | set(individual.dimension_ids)
            ids |= set(household.indicator_ids) | set(individual.indicator_ids)
            if item not in ids:
                raise NotFoundError(f"Neither scheme has '{item}'", id=item)
    return (
        apply_exclusions(household, dimensions, indicators, skip_unknown=True),
        apply_exclusions(individual, dimensions, indicators, skip_unknown=True),
    )


def resolve_k(k: Optional[str], scheme: MeasurementScheme) -> Fraction:
    """``--k`` when given; built-in schemes then follow AFMPI_DEFAULT_K, documents their own k."""
    if k is not None:
        return check_cutoff(k)
    base = scheme.base_id or scheme.id
    if base in BUILTIN_SCHEMES:
        return check_cutoff(config.DEFAULT_K)
    return scheme.poverty_cutoff_k


def load_population(households: str, persons: str, policy: str, schemes=None) -> Population:
    for path in (households, persons):
        if not os.path.exists(path):
            raise FileNotFoundError(errno.ENOENT, f"Input file not found: {path}", path)
    return ingest(households, persons, policy=MissingDataPolicy(policy), schemes=schemes)


def open_writer(out: Optional[str], fmt: str) -> ReportWriter:
    return ReportWriter(out or config.OUTPUT_DIR, fmt)


def finish_run(
    writer: ReportWriter,
    schemes,
    pop: Optional[Population] = None,
    inputs=(),
    k: Optional[Fraction] = None,
    **flags,
):
    """Write the ingest provenance sidecar and the run manifest."""
    ctx = click.get_current_context()
    if pop is not None:
        writer.write_document("provenance.json", pop.provenance.to_dict())
        inputs = (pop.provenance.households_source, pop.provenance.persons_source)
    manifest = build_manifest(
        command=ctx.command_path,
        schemes=schemes,
        inputs=inputs,
        policy=pop.provenance.policy.value if pop is not None else None,
        flags={key: list(value) if isinstance(value, tuple) else value for key, value in flags.items()},
        k=k,
        outputs=writer.outputs(),
    )
    path = writer.write_manifest(manifest)
    logger.info(f"{ctx.command_path}: {len(manifest.outputs)} files in {writer.out_dir}")
    return path
