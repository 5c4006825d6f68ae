"""Engine commands of the eb_update CLI."""
import logging
from functools import wraps

from ..decision import (Bet, check_extension_consistency, discarded_atoms,
                        preference)
from ..engine import (UpdateStatus, chain_report, check_common_witness,
                      check_geb, classify_update, conditional_bounds,
                      construct_witness, verify_witness)
from ..errors import (InputError, NotCommensurateError, ResourceCapError,
                      TriviallyConditionedError, UpdateError)
from ..measures import format_rational, mass
from ..report import (bounds_dict, chain_report_dict, consistency_dict,
                      measure_dict, render, to_json, update_report_dict,
                      violation_dict)
from ..scenario import Scenario, scenario_to_dict
from . import click
from . import options as opt
from .main import eb_update

logger = logging.getLogger('eb_update')

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def exit_codes(func):
    """Map the command's return value and the engine errors onto the process exit code."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            code = func(*args, **kwargs)
        except ResourceCapError as e:
            click.echo(f'Error: {e}', err=True)
            code = EXIT_CAP
        except InputError as e:
            click.echo(f'Error: {e}', err=True)
            code = EXIT_INPUT
        except UpdateError as e:
            click.echo(f'Error: {e}', err=True)
            code = EXIT_FAILS
        click.get_current_context().exit(code or EXIT_OK)

    return wrapper


@eb_update.command()
@opt.FORMAT_OPTION
@opt.SCENARIO_ARGUMENT
@exit_codes
def check(scenario: Scenario, fmt: str):
    """Classify the update from period 0 to period 1."""
    if scenario.is_expansion:
        report = check_geb(scenario.periods[0], scenario.periods[1])
    else:
        report = classify_update(scenario.pair(0, 1))
    click.echo(render(update_report_dict(report), fmt))
    return EXIT_OK if report.status.holds else EXIT_FAILS


@eb_update.command()
@opt.FORMAT_OPTION
@opt.SCENARIO_ARGUMENT
@exit_codes
def witness(scenario: Scenario, fmt: str):
    """Construct the interim measure of the update from period 0 to period 1 and verify it."""
    pair = scenario.pair(0, 1)
    try:
        wit = construct_witness(pair)
    except TriviallyConditionedError as e:
        logger.debug(str(e))
        click.echo(render({'status': UpdateStatus.EB_TRIVIAL.value, 'witness': None}, fmt))
        return EXIT_OK
    except NotCommensurateError as e:
        click.echo(render({'status': UpdateStatus.FAILS.value, 'violation': violation_dict(e.violation)}, fmt))
        return EXIT_FAILS

    ok, violation = verify_witness(pair, wit.interim)
    data = {
        'beta': format_rational(wit.beta),
        'interim': measure_dict(wit.interim),
        'verified': ok,
        'violation': violation_dict(violation),
    }
    click.echo(render(data, fmt))
    return EXIT_OK if ok else EXIT_FAILS


@eb_update.command()
@opt.FORMAT_OPTION
@opt.SCENARIO_ARGUMENT
@exit_codes
def chain(scenario: Scenario, fmt: str):
    """Classify every pair of periods and build the common witness."""
    report = chain_report(scenario.chain)
    bad = None
    if report.witness is not None:
        bad = check_common_witness(scenario.chain, report.witness)
    click.echo(render(chain_report_dict(report, bad), fmt))
    return EXIT_OK if report.holds and not bad else EXIT_FAILS


@eb_update.command()
@opt.FORMAT_OPTION
@opt.VERTEX_CAP_OPTION
@click.option('--given', required=True, help='Conditioning event: states `a,b` or a formula.')
@click.option('--target', required=True, help='Target event: states `a,b` or a formula.')
@opt.SCENARIO_ARGUMENT
@exit_codes
def bounds(scenario: Scenario, given: str, target: str, fmt: str, vertex_cap: int = None):
    """Inner and outer probability of TARGET given GIVEN over all extensions of the period 0 prior."""
    pair = scenario.pair(0, 1)
    given_ev = scenario.event(given)
    target_ev = scenario.event(target)
    inner, outer = conditional_bounds(pair.prior, pair.fine, given_ev, target_ev, cap=vertex_cap)
    posterior = None
    if given_ev == pair.evidence:
        posterior = mass(pair.posterior, target_ev)
    click.echo(render(bounds_dict(given_ev, target_ev, inner, outer, posterior), fmt))
    return EXIT_OK


def _reversals(scenario: Scenario, pair, violation) -> list[dict]:
    e, f = violation.events
    u = scenario.utility
    res = []
    for x in u.prizes:
        for y in u.prizes:
            bet_f, bet_e = Bet(x, f), Bet(y, e)
            before = preference(pair.prior, u, bet_f, bet_e)
            after = preference(pair.posterior, u, bet_f, bet_e)
            if before >= 0 > after:
                res.append({'bet_on_f': x, 'bet_on_e': y})
    return res


@eb_update.command()
@opt.FORMAT_OPTION
@opt.MAX_ATOMS_OPTION
@opt.SCENARIO_ARGUMENT
@exit_codes
def prefs(scenario: Scenario, fmt: str, max_atoms: int = None):
    """Extension consistency of the betting preferences of periods 0 and 1."""
    pair = scenario.pair(0, 1)
    report = check_extension_consistency(pair, max_atoms=max_atoms)
    discarded = [atom for atom, flag in zip(pair.coarse.atoms, discarded_atoms(pair)) if flag]
    reversals = None
    if scenario.utility is not None and report.violation is not None:
        reversals = _reversals(scenario, pair, report.violation)
    click.echo(render(consistency_dict(report, discarded, reversals), fmt))
    return EXIT_OK if report.consistent else EXIT_FAILS


@eb_update.command(name='compile')
@opt.SCENARIO_ARGUMENT
@exit_codes
def compile_(scenario: Scenario):
    """Print the state based scenario equivalent to SCENARIO (propositional scenarios are compiled)."""
    click.echo(to_json(scenario_to_dict(scenario)))
    return EXIT_OK
