"""eb_update.cli.main"""
from .. import __version__
from ..settings import configure_logging
from . import click
from . import options as opt


@click.group()
@click.version_option(__version__)
@opt.VERBOSE_OPTION
def eb_update(verbose: bool = False):
    """Check, construct and certify extended Bayesian belief updates."""
    configure_logging('DEBUG' if verbose else None)


@eb_update.group()
def demo():
    """Reproducible demonstrations and randomized property sweeps."""


__all__ = [
    'eb_update',
    'demo',
]
