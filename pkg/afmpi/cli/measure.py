from fractions import Fraction

import click
import numpy as np

from ..deprivation import deprivation_rates, evaluate
from ..engine import (
    attach_household_status,
    attributed_headcounts,
    crosstab,
    decompose_indicators,
    decompose_subgroups,
    dominates,
    measure,
    measure_groups,
    membership,
    score,
    sweep,
)
from ..engine.measures import group_mask, group_values
from ..engine.sweep import METRICS
from ..exceptions import EmptyPoorSet, UsageError
from ..report import (
    attributed_rows,
    crosstab_rows,
    decomposition_group_row,
    decomposition_rows,
    rates_rows,
    render,
    subgroup_rows,
    summary_rows,
    sweep_rows,
    undefined_decomposition_rows,
    unit_rows,
)
from .options import (
    LEVELS,
    exclusion_options,
    finish_run,
    load_population,
    open_writer,
    output_options,
    population_options,
    resolve_k,
    resolve_scheme,
    resolve_scheme_pair,
)

GROUP_BY = ("sex", "marital_status", "head_sex", "household_poor")
MARITAL_REPORTED = ("never_married", "currently_married", "widowed")
STATUS_LABELS = {"True": "poor", "False": "non_poor"}


def _scheme_option(func):
    return click.option("--scheme", default=None, help="Built-in scheme id or scheme JSON path")(func)


def _pair_options(func):
    func = click.option("--individual-scheme", default=None, help="Individual scheme (default khas_individual)")(func)
    return click.option("--household-scheme", default=None, help="Household scheme (default khas_household)")(func)


@click.command()
@population_options
@_scheme_option
@click.option("--level", type=click.Choice(LEVELS), default="household", show_default=True)
@exclusion_options
@output_options
@click.option("--detail", is_flag=True, help="Also write per-unit scores")
def compute(households, persons, policy, scheme, level, k, exclude_dimension, exclude_indicator, out, fmt, detail):
    """Headcount, intensity and M0 for one scheme."""
    scheme = resolve_scheme(scheme, level, exclude_dimension, exclude_indicator)
    k = resolve_k(k, scheme)
    pop = load_population(households, persons, policy, [scheme])
    mat = evaluate(pop, scheme)
    sv = score(mat, scheme)
    result = measure(sv, k)

    by = "sex" if level == "individual" else "head_sex"
    groups = measure_groups(sv, k, mat, by)
    rows = summary_rows({"all": result, **groups}, by)
    writer = open_writer(out, fmt)
    writer.write_table("summary", rows, scheme_id=scheme.id, level=level)
    if level == "household":
        table = attributed_headcounts(membership(pop), result)
        writer.write_table("attributed", attributed_rows(table), scheme_id=scheme.id)
    else:
        table = decompose_subgroups(groups, total=result)
        writer.write_table("subgroups", subgroup_rows(table, by), scheme_id=scheme.id)
    if detail:
        writer.write_table("units", unit_rows(sv, result, mat), scheme_id=scheme.id)

    finish_run(writer, [scheme], pop, k=k, level=level, detail=detail, format=fmt)
    click.echo(render("summary.txt", rows=rows), nl=False)


def _decompose_groups(mat, group_by):
    """(label, mask) per reported group, plus footnotes for units left out."""
    if group_by is None:
        return [], []
    values = group_values(mat.attributes, group_by)
    footnotes = []
    if group_by == "marital_status":
        left_out = [v for v in values if v not in MARITAL_REPORTED]
        for value in left_out:
            count = int(group_mask(mat.attributes, group_by, value).sum())
            footnotes.append(f"{count} {value} persons are not included in the marital status groups")
        missing = int(mat.attributes["marital_status"].isna().sum())
        if missing:
            footnotes.append(f"{missing} persons without a marital status are not included")
        values = [v for v in MARITAL_REPORTED if v in values]
    return [(STATUS_LABELS.get(v, v), group_mask(mat.attributes, group_by, v)) for v in values], footnotes


@click.command()
@population_options
@_scheme_option
@click.option("--level", type=click.Choice(LEVELS), default="individual", show_default=True)
@click.option("--household-scheme", default=None, help="Household scheme behind --group-by household_poor")
@click.option("--group-by", type=click.Choice(GROUP_BY), default=None)
@click.option("--sex", type=click.Choice(["female", "male"]), default=None, help="Restrict to one sex")
@exclusion_options
@output_options
def decompose(
    households, persons, policy, scheme, level, household_scheme, group_by, sex, k,
    exclude_dimension, exclude_indicator, out, fmt,
):
    """Indicator and dimension contributions to M0, overall and per subgroup."""
    if level == "household" and (group_by in ("sex", "marital_status") or sex):
        raise UsageError(f"Households cannot be grouped by {group_by or 'sex'}", level=level)
    scheme = resolve_scheme(scheme, level, exclude_dimension, exclude_indicator)
    k = resolve_k(k, scheme)
    schemes = [scheme]
    if group_by == "household_poor" and level == "individual":
        schemes.append(resolve_scheme(household_scheme, "household", exclude_dimension, exclude_indicator))
    pop = load_population(households, persons, policy, schemes)

    mat = evaluate(pop, scheme)
    result = measure(score(mat, scheme), k)
    if group_by == "household_poor":
        if level == "individual":
            hh_scheme = schemes[1]
            hh_result = measure(score(evaluate(pop, hh_scheme), hh_scheme), resolve_k(None, hh_scheme))
        else:
            hh_result = result
        mat = attach_household_status(mat, hh_result)

    base = np.ones(len(mat), dtype=bool) if sex is None else group_mask(mat.attributes, "sex", sex)
    groups, footnotes = _decompose_groups(mat, group_by)
    rows, group_rows = [], []
    runs = [(None, sex or "all", base)] + [(group_by, value, base & mask) for value, mask in groups]
    for group, label, selected in runs:
        try:
            table = decompose_indicators(result, mat, scheme, subset=selected, label=label)
        except EmptyPoorSet:
            n = int(selected.sum())
            rows += undefined_decomposition_rows(scheme, label, n, group)
            group_rows.append(decomposition_group_row(group, label, n, "empty_poor_set"))
            continue
        rows += decomposition_rows(table, group)
        group_rows.append(decomposition_group_row(group, label, table.n, "ok", table))

    writer = open_writer(out, fmt)
    writer.write_table("decomposition", rows, scheme_id=scheme.id)
    writer.write_table("decomposition_groups", group_rows, footnotes=footnotes, scheme_id=scheme.id)
    finish_run(writer, schemes, pop, k=k, level=level, group_by=group_by, sex=sex, format=fmt)
    for row in group_rows:
        click.echo(f"{row['group']}: n={row['n']} q={row['q']} M0={row['M0'] or '-'} [{row['status']}]")
    for note in footnotes:
        click.echo(f"Note: {note}")


@click.command("crosstab")
@population_options
@_pair_options
@click.option("--by", multiple=True, type=click.Choice(["sex", "head_sex"]), help="Split columns by sex, rows by head_sex")
@exclusion_options
@output_options
def crosstab_command(
    households, persons, policy, household_scheme, individual_scheme, by, k,
    exclude_dimension, exclude_indicator, out, fmt,
):
    """Individuals by own poverty status against their household's status."""
    hh_scheme, ind_scheme = resolve_scheme_pair(household_scheme, individual_scheme, exclude_dimension, exclude_indicator)
    pop = load_population(households, persons, policy, [hh_scheme, ind_scheme])
    hh_k, ind_k = resolve_k(k, hh_scheme), resolve_k(k, ind_scheme)
    hh_result = measure(score(evaluate(pop, hh_scheme), hh_scheme), hh_k)
    ind_mat = evaluate(pop, ind_scheme)
    ind_result = measure(score(ind_mat, ind_scheme), ind_k)
    table = crosstab(ind_result, hh_result, ind_mat, by=by)

    writer = open_writer(out, fmt)
    writer.write_table("crosstab", crosstab_rows(table), schemes=[hh_scheme.id, ind_scheme.id])
    finish_run(writer, [hh_scheme, ind_scheme], pop, k=ind_k, by=list(by), format=fmt)
    hidden = table.cell("poor", "non_poor")
    click.echo(f"Poor individuals in non-poor households: {hidden.count} of {hidden.column_total}")


@click.command("sweep")
@population_options
@_scheme_option
@click.option("--level", type=click.Choice(LEVELS), default="individual", show_default=True)
@click.option("--cutoffs", default=None, help="Comma-separated ascending cutoffs, e.g. 1/10,2/10")
@click.option("--group-by", type=click.Choice(["sex", "head_sex", "none"]), default=None)
@exclusion_options
@output_options
def sweep_command(
    households, persons, policy, scheme, level, cutoffs, group_by, k,
    exclude_dimension, exclude_indicator, out, fmt,
):
    """H, A and M0 over a range of poverty cutoffs."""
    if k is not None:
        raise UsageError("sweep takes --cutoffs, not --k")
    group_by = group_by or ("sex" if level == "individual" else "head_sex")
    if level == "household" and group_by == "sex":
        raise UsageError("Households cannot be grouped by sex", level=level)
    scheme = resolve_scheme(scheme, level, exclude_dimension, exclude_indicator)
    pop = load_population(households, persons, policy, [scheme])
    curve = sweep(evaluate(pop, scheme), scheme, cutoffs.split(",") if cutoffs else None, group_by)

    writer = open_writer(out, fmt)
    writer.write_table("sweep", sweep_rows(curve), scheme_id=scheme.id)
    finish_run(writer, [scheme], pop, cutoffs=[str(c) for c in curve.cutoffs], group_by=group_by, format=fmt)

    groups = [g for g in curve.groups if g != "all"]
    if len(groups) == 2:
        a, b = groups
        for metric in METRICS:
            if dominates(curve, a, b, metric):
                click.echo(f"{metric}: {a} dominates {b}")
            elif dominates(curve, b, a, metric):
                click.echo(f"{metric}: {b} dominates {a}")
            else:
                click.echo(f"{metric}: curves cross")


def _average_age(mat, mask) -> Fraction | None:
    ages = mat.attributes["age"][mask]
    if not len(ages) or ages.isna().any():
        return None
    return Fraction(int(ages.sum()), len(ages))


@click.command()
@population_options
@_pair_options
@exclusion_options
@output_options
def rates(households, persons, policy, household_scheme, individual_scheme, k, exclude_dimension, exclude_indicator, out, fmt):
    """Deprivation rates for households, men and women, overall and among the poor."""
    hh_scheme, ind_scheme = resolve_scheme_pair(household_scheme, individual_scheme, exclude_dimension, exclude_indicator)
    pop = load_population(households, persons, policy, [hh_scheme, ind_scheme])
    hh_k, ind_k = resolve_k(k, hh_scheme), resolve_k(k, ind_scheme)
    hh_mat = evaluate(pop, hh_scheme)
    ind_mat = evaluate(pop, ind_scheme)
    hh_poor = np.asarray(measure(score(hh_mat, hh_scheme), hh_k).poor_flags)
    ind_poor = np.asarray(measure(score(ind_mat, ind_scheme), ind_k).poor_flags)
    men = group_mask(ind_mat.attributes, "sex", "male")
    women = group_mask(ind_mat.attributes, "sex", "female")

    columns = [
        ("all_households", deprivation_rates(hh_mat, label="all_households"), None),
        ("all_men", deprivation_rates(ind_mat, men, "all_men"), _average_age(ind_mat, men)),
        ("all_women", deprivation_rates(ind_mat, women, "all_women"), _average_age(ind_mat, women)),
        ("poor_households", deprivation_rates(hh_mat, hh_poor, "poor_households"), None),
        ("poor_men", deprivation_rates(ind_mat, men & ind_poor, "poor_men"), _average_age(ind_mat, men & ind_poor)),
        (
            "poor_women",
            deprivation_rates(ind_mat, women & ind_poor, "poor_women"),
            _average_age(ind_mat, women & ind_poor),
        ),
    ]
    writer = open_writer(out, fmt)
    writer.write_table("rates", rates_rows(columns), schemes=[hh_scheme.id, ind_scheme.id])
    finish_run(writer, [hh_scheme, ind_scheme], pop, k=ind_k, format=fmt)
    for name, table, _ in columns:
        click.echo(f"{name}: n={table.n}")
