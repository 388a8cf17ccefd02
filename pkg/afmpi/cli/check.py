import sys

import click

from ..engine.published import FAIL, KNOWN, PASS, check_paper
from ..report import check_rows, render
from .options import finish_run, open_writer, output_options


@click.command("check-paper")
@output_options
def check_paper_command(out, fmt):
    """Check the published KHAS-MPI figures for internal consistency."""
    check = check_paper()
    statuses = [line.status for line in check.lines]
    click.echo(
        render(
            "check_paper.txt",
            check=check,
            passed=statuses.count(PASS),
            known=statuses.count(KNOWN),
            failed=statuses.count(FAIL),
        ),
        nl=False,
    )
    if out:
        writer = open_writer(out, fmt)
        writer.write_table("check_paper", check_rows(check))
        finish_run(writer, [], format=fmt)
    if not check.ok:
        sys.exit(1)
