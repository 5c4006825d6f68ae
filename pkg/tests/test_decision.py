"""Tests for bets, discarded events and extension consistency."""
from fractions import Fraction as Fr

import pytest

from eb_update import decision as dec
from eb_update.engine import check_commensurate
from eb_update.errors import (InvalidUtilityError, NotMeasurableError,
                              TooManyAtomsError, UnknownPrizeError)


@pytest.fixture
def utility():
    return dec.UtilityIndex.from_mapping({'car': '1', 'bike': '1/3', 'nothing': '0'}, worst='nothing')


@pytest.mark.parametrize('mapping,worst', [
    ({'x': '1', 'y': '0'}, 'z'),
    ({'x': '1', 'y': '1/2'}, 'y'),
    ({'x': '-1', 'y': '0'}, 'y'),
    ({'x': '0', 'y': '0'}, 'y'),
])
def test_invalid_utility(mapping, worst):
    with pytest.raises(InvalidUtilityError):
        dec.UtilityIndex.from_mapping(mapping, worst)


def test_duplicate_prizes():
    with pytest.raises(InvalidUtilityError):
        dec.UtilityIndex(('x', 'x', 'y'), ('1', '1', '0'), 'y')


def test_unknown_prize(utility):
    with pytest.raises(UnknownPrizeError):
        utility.utility('boat')


def test_bet_value_and_preference(diagnosis_pair, utility):
    space = diagnosis_pair.prior.space
    on_a = dec.Bet('bike', space.event(['wA']))
    on_c = dec.Bet('car', space.event(['wC1', 'wC2']))
    assert dec.bet_value(diagnosis_pair.prior, utility, on_a) == Fr(1, 6)
    assert dec.bet_value(diagnosis_pair.prior, utility, on_c) == Fr(1, 4)
    assert dec.preference(diagnosis_pair.prior, utility, on_c, on_a) == 1
    assert dec.preference(diagnosis_pair.posterior, utility, on_c, on_a) == -1
    assert dec.preference(diagnosis_pair.prior, utility, on_a, on_a) == 0


def test_contains_discarded(diagnosis_pair):
    space = diagnosis_pair.prior.space
    found, certificate = dec.contains_discarded(diagnosis_pair, space.event(['wC1', 'wC2']))
    assert found
    assert certificate == space.event(['wC2'])
    assert dec.contains_discarded(diagnosis_pair, space.event(['wA', 'wB'])) == (False, None)


def test_contains_discarded_not_measurable(five_state_chain):
    pair = five_state_chain.pair(0, 1)
    with pytest.raises(NotMeasurableError):
        dec.contains_discarded(pair, pair.prior.space.event(['w1']))


def test_null_without_prior_mass_is_not_discarded(measure_zero_chain):
    pair = measure_zero_chain.pair(0, 2)
    space = pair.prior.space
    assert dec.contains_discarded(pair, space.event(['w1'])) == (False, None)


def test_reversal_possible(diagnosis_pair):
    space = diagnosis_pair.prior.space
    e_a = space.event(['wA'])
    assert dec.reversal_possible(diagnosis_pair, e_a, space.event(['wC1', 'wC2']))
    assert not dec.reversal_possible(diagnosis_pair, e_a, space.event(['wB']))
    assert not dec.reversal_possible(diagnosis_pair, e_a, space.event(['wA', 'wB']))
    with pytest.raises(NotMeasurableError):
        dec.reversal_possible(diagnosis_pair, space.event(['wC1']), e_a)


def test_discarded_atoms(diagnosis_pair, two_state_pair):
    assert dec.discarded_atoms(diagnosis_pair) == [False, False, True]
    assert dec.discarded_atoms(two_state_pair) == [False, False]


def test_consistent(diagnosis_pair, product_pair):
    assert dec.check_extension_consistency(diagnosis_pair) == dec.ConsistencyReport(True)
    assert dec.check_extension_consistency(product_pair).consistent


def test_inconsistent(two_state_pair):
    report = dec.check_extension_consistency(two_state_pair)
    assert not report.consistent
    space = two_state_pair.prior.space
    assert report.violation.events == (space.event(['b']), space.event(['a']))
    assert dec.reversal_possible(two_state_pair, *report.violation.events)


def test_inconsistent_measure_zero(measure_zero_chain):
    pair = measure_zero_chain.pair(0, 2)
    report = dec.check_extension_consistency(pair)
    assert not report.consistent
    assert not check_commensurate(pair).holds
    space = pair.prior.space
    assert report.violation.events == (space.event(['w2']), space.event(['w3']))


def test_too_many_atoms(diagnosis_pair):
    with pytest.raises(TooManyAtomsError):
        dec.check_extension_consistency(diagnosis_pair, max_atoms=2)
