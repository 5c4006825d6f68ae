"""Demo commands of the eb_update CLI."""
import logging

from ..engine import (beta_feasible, construct_witness, truncated_example,
                      truncation_beta)
from ..measures import format_rational
from ..progress import progress_bar, sweep_group
from ..report import render
from ..sampling import SWEEPS, run_sweeps
from . import click
from . import options as opt
from .commands import EXIT_FAILS, EXIT_OK, exit_codes
from .main import demo

logger = logging.getLogger('eb_update')


@demo.command()
@opt.FORMAT_OPTION
@click.option('--min-n', type=click.IntRange(min=1), default=2, show_default=True, help='Smallest truncation')
@click.option('--max-n', type=click.IntRange(min=2), default=8, show_default=True, help='Largest truncation')
@exit_codes
def truncation(fmt: str, min_n: int = 2, max_n: int = 8):
    """Witness beta of finite truncations of the countable example: the normalized beta shrinks by 2/3 each step."""
    rows = []
    prev = None
    ok = True
    for n in progress_bar(range(min_n, max_n + 1), description='Truncations'):
        pair = truncated_example(n)
        beta = construct_witness(pair).beta
        normalized = truncation_beta(n)
        ratio = None if prev is None else normalized / prev
        feasible = beta_feasible(pair)
        ok &= feasible and (ratio is None or ratio * 3 == 2)
        rows.append({
            'n': n,
            'beta': format_rational(beta),
            'normalized_beta': format_rational(normalized),
            'ratio_to_previous': None if ratio is None else format_rational(ratio),
            'oracle_feasible': feasible,
        })
        prev = normalized
    click.echo(render({'truncations': rows, 'holds': ok}, fmt))
    return EXIT_OK if ok else EXIT_FAILS


@demo.command()
@opt.FORMAT_OPTION
@opt.SEED_OPTION
@opt.SAMPLES_OPTION
@click.option(
    '--sweep', 'sweeps', multiple=True,
    type=click.Choice(sorted(SWEEPS)),
    help='Sweep to run (repeatable, default: all)'
)
@exit_codes
def properties(fmt: str, seed: int, samples: int, sweeps: tuple[str, ...] = ()):
    """Randomized checks of the update characterizations on seeded instances."""
    with sweep_group():
        results = run_sweeps(seed, samples, list(sweeps) or None)
    data = {
        'seed': seed,
        'samples': samples,
        'sweeps': [
            {'name': r.name, 'checked': r.checked, 'failures': r.failures, 'ok': r.ok}
            for r in results
        ],
    }
    click.echo(render(data, fmt))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILS
