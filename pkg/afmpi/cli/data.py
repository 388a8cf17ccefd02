import click

from ..exceptions import UsageError
from ..report import render
from ..synthgen import demo_config, khas_like_config, load_generator_config, write_fixture, write_population
from ..utils.file_operations import write_text
from .options import load_population, population_options


@click.command("generate")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Generator config JSON")
@click.option("--demo", is_flag=True, help="Use the shipped demo config")
@click.option("--khas-like", is_flag=True, help="Use the shipped KHAS-shaped config")
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
def generate_command(config_path, demo, khas_like, out_dir):
    """Write a synthetic households.csv / persons.csv pair."""
    chosen = [flag for flag, on in (("--config", config_path), ("--demo", demo), ("--khas-like", khas_like)) if on]
    if len(chosen) != 1:
        raise UsageError("Give exactly one of --config, --demo, --khas-like", given=chosen)
    if config_path:
        cfg = load_generator_config(config_path)
    else:
        cfg = demo_config() if demo else khas_like_config()

    households, persons = write_population(cfg, out_dir)
    click.echo(f"Wrote {households} and {persons} ({cfg.n_households} households, seed {cfg.seed})")


@click.command()
@population_options
@click.option("--provenance-out", type=click.Path(dir_okay=False), default=None, help="Write provenance JSON here")
def validate(households, persons, policy, provenance_out):
    """Ingest the two files and report what would be dropped, without measuring."""
    pop = load_population(households, persons, policy)
    if provenance_out:
        write_text(provenance_out, pop.provenance.to_json())
    click.echo(render("provenance.txt", p=pop.provenance), nl=False)


@click.command()
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
def fixture(out_dir):
    """Write the six-household reference fixture."""
    households, persons = write_fixture(out_dir)
    click.echo(f"Wrote {households} and {persons}")
