"""Shared click options for the eb_update CLI."""
from . import click
from . import click_types as ct

VERBOSE_OPTION = click.option(
    '-v', '--verbose',
    is_flag=True,
    help='Log debug messages on standard error'
)

FORMAT_OPTION = click.option(
    '--format', 'fmt',
    type=click.Choice(['text', 'json']),
    default='text',
    show_default=True,
    help='Report format'
)

VERTEX_CAP_OPTION = click.option(
    '--vertex-cap',
    type=click.IntRange(min=1),
    default=None,
    help='Maximum number of extension vertices to enumerate (default: EB_VERTEX_CAP)'
)

MAX_ATOMS_OPTION = click.option(
    '--max-atoms',
    type=click.IntRange(min=1),
    default=None,
    help='Maximum number of coarse atoms for the consistency scan (default: EB_MAX_CONSISTENCY_ATOMS)'
)

SEED_OPTION = click.option(
    '--seed',
    type=int,
    default=0,
    show_default=True,
    help='Seed of the random instance generator'
)

SAMPLES_OPTION = click.option(
    '--samples',
    type=click.IntRange(min=1),
    default=200,
    show_default=True,
    help='Number of random instances per sweep'
)

SCENARIO_ARGUMENT = click.argument('scenario', type=ct.ScenarioType())
