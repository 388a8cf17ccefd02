import json

import click

from .. import __version__
from ..config import config
from ..exceptions import handle_exception
from ..logger import configure_logging, logger
from .check import check_paper_command
from .data import fixture, generate_command, validate
from .measure import compute, crosstab_command, decompose, rates, sweep_command


class AfmpiGroup(click.Group):
    """Routes afmpi errors through ``exception_handlers``: JSON on stderr and the mapped exit code."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except Exception as e:
            handled = handle_exception(e)
            if handled is None:
                raise
            exit_code, payload = handled
            logger.debug(f"{type(e).__name__}: {e}")
            click.echo(json.dumps(payload, default=str), err=True)
            ctx.exit(exit_code)


@click.group(cls=AfmpiGroup)
@click.version_option(version=__version__, prog_name="afmpi")
@click.option("--log-level", default=None, help="Logging level (default AFMPI_LOG_LEVEL or WARNING)")
def cli(log_level):
    """Alkire-Foster multidimensional poverty at household and individual level."""
    configure_logging(log_level or config.LOG_LEVEL)


cli.add_command(compute, name="compute")
cli.add_command(decompose, name="decompose")
cli.add_command(crosstab_command, name="crosstab")
cli.add_command(sweep_command, name="sweep")
cli.add_command(rates, name="rates")
cli.add_command(check_paper_command, name="check-paper")
cli.add_command(generate_command, name="generate")
cli.add_command(validate, name="validate")
cli.add_command(fixture, name="fixture")


if __name__ == "__main__":
    cli()
