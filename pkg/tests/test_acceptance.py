"""Full-size randomized sweeps and reproduction of the worked examples.

The sweeps are marked ``slow``; run them with ``pytest -m slow``.
"""
import json
import random
from fractions import Fraction as Fr

import pytest
from click.testing import CliRunner
from hypothesis import given, settings

from eb_update import engine as eng
from eb_update import logic as lg
from eb_update import sampling
from eb_update.cli import eb_update
from eb_update.errors import TrivialLinkError
from eb_update.measures import mass

from .conftest import (PROPS, evaluate, formulas, free_parameters,
                       grid_extensions, valuations)

SEED = 20240101


def test_diagnosis_example(diagnosis_pair):
    report = eng.classify_update(diagnosis_pair)
    assert report.status is eng.UpdateStatus.EB_POSITIVE
    witness = eng.construct_witness(diagnosis_pair)
    assert witness.interim.masses == (Fr(1, 2), Fr(1, 4), Fr(1, 8), Fr(1, 8))
    assert witness.beta == Fr(7, 8)


def test_five_state_chain(five_state_chain):
    links, witness = eng.chain_common_witness(five_state_chain)
    assert witness.masses == (Fr(1, 8), Fr(1, 8), Fr(1, 4), Fr(1, 4), Fr(1, 4))
    assert set(links) == {(0, 1), (0, 2), (1, 2)}
    assert all(r.status is eng.UpdateStatus.EB_POSITIVE for r in links.values())


def test_measure_zero_counterexample(measure_zero_chain):
    reports = eng.chain_reports(measure_zero_chain)
    assert reports[0, 1].status is eng.UpdateStatus.EB_TRIVIAL
    assert reports[1, 2].status is eng.UpdateStatus.EB_TRIVIAL
    assert reports[0, 2].status is eng.UpdateStatus.FAILS
    assert reports[0, 2].violation.condition == 'c2'
    with pytest.raises(TrivialLinkError):
        eng.chain_common_witness(measure_zero_chain)


@pytest.mark.parametrize('n', range(2, 9))
def test_truncations(n):
    pair = eng.truncated_example(n)
    assert eng.classify_update(pair).status is eng.UpdateStatus.EB_POSITIVE
    assert eng.beta_feasible(pair)
    assert eng.truncation_beta(n) == Fr(2, 3) ** n
    if n < 8:
        assert eng.truncation_beta_ratio(n) == Fr(2, 3)


def test_logic_example_through_cli():
    result = CliRunner().invoke(eb_update, ['check', '--format', 'json', 'example1_logic'])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data['status'] == 'EB_POSITIVE'
    assert data['witness']['beta'] == '7/8'


@pytest.mark.slow
@pytest.mark.parametrize('name,samples', [
    ('commensurability', 10000),
    ('consistency', 5000),
    ('chains', 1000),
    ('nonmeasurable', 2000),
])
def test_sweep(name, samples):
    result = sampling.SWEEPS[name](random.Random(SEED), samples)
    assert result.checked == samples
    assert result.ok, result.failures[:5]


@pytest.mark.slow
def test_envelope_sweep():
    result = sampling.sweep_envelope(random.Random(SEED), 2000)
    assert result.checked > 0
    assert result.ok, result.failures[:5]


@pytest.mark.slow
def test_conditional_bounds_grid_sweep():
    rng = random.Random(SEED)
    checked = 0
    while checked < 300:
        pair = sampling.random_pair(rng, max_states=6)
        if free_parameters(pair.prior, pair.fine) > 3:
            continue
        grid = list(grid_extensions(pair.prior, pair.fine, steps=6))
        for given_ev in pair.fine.events():
            if not grid or max(mass(m, given_ev) for m in grid) == 0:
                continue
            positive = [m for m in grid if mass(m, given_ev) > 0]
            for target in pair.fine.atoms:
                inner, outer = eng.conditional_bounds(pair.prior, pair.fine, given_ev, target)
                ratios = [mass(m, target & given_ev) / mass(m, given_ev) for m in positive]
                assert (min(ratios), max(ratios)) == (inner, outer)
        checked += 1


@pytest.mark.slow
@given(formulas)
@settings(max_examples=10000, deadline=None)
def test_logic_round_trip_suite(formula):
    assert lg.parse(lg.format_formula(formula)) == formula


@pytest.mark.slow
@given(formulas, formulas)
@settings(max_examples=10000, deadline=None)
def test_logic_semantics_suite(phi, psi):
    truth_phi = lg.truth_set(phi, PROPS)
    truth_psi = lg.truth_set(psi, PROPS)
    for state, valuation in valuations():
        assert (state in truth_phi.members) == evaluate(phi, valuation)
    assert lg.truth_set(lg.Not(phi), PROPS) == truth_phi.complement()
    assert lg.truth_set(lg.And(phi, psi), PROPS) == truth_phi & truth_psi
    brute = all(evaluate(psi, v) for _, v in valuations() if evaluate(phi, v))
    assert lg.entails(phi, psi, PROPS) == brute
