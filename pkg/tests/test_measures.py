"""Tests for exact measures, conditioning, restriction and extension vertices."""
from fractions import Fraction as Fr

import pytest

from eb_update.algebra import StateSpace, discrete_algebra, from_blocks
from eb_update.errors import (ExplosionError, InvalidMeasureError,
                              InvalidRationalError, MassAlgebraMismatchError,
                              NotARefinementError, NotMeasurableError,
                              ZeroMassConditioningError)
from eb_update.measures import (Measure, conditional, extension_vertices,
                                format_rational, is_extension,
                                iter_extension_vertices, mass, outer_measure,
                                parse_rational, restrict, support,
                                vertex_count)


@pytest.fixture
def space():
    return StateSpace(('a', 'b', 'c', 'd'))


@pytest.fixture
def coarse(space):
    return from_blocks(space, [['a', 'b'], ['c', 'd']])


@pytest.mark.parametrize('text,value', [
    ('1/2', Fr(1, 2)),
    ('2/4', Fr(1, 2)),
    (' 3 ', Fr(3)),
    ('0', Fr(0)),
    (1, Fr(1)),
    (Fr(2, 3), Fr(2, 3)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize('text', ['0.5', '1/0', 'x', '', 0.5, True, None, '1/2/3'])
def test_parse_rational_rejects(text):
    with pytest.raises(InvalidRationalError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fr(2, 4)) == '1/2'
    assert format_rational(Fr(3)) == '3'
    assert format_rational(Fr(0)) == '0'


def test_measure_must_sum_to_one(coarse):
    with pytest.raises(InvalidMeasureError):
        Measure(coarse, (Fr(1, 2), Fr(2, 5)))


def test_measure_rejects_negative(coarse):
    with pytest.raises(InvalidMeasureError):
        Measure(coarse, (Fr(3, 2), Fr(-1, 2)))


def test_measure_length(coarse):
    with pytest.raises(InvalidMeasureError):
        Measure(coarse, (Fr(1),))


def test_from_events(space, coarse):
    m = Measure.from_events(coarse, [(space.event(['c', 'd']), '1/3'), (space.event(['a', 'b']), '2/3')])
    assert m.masses == (Fr(2, 3), Fr(1, 3))


def test_from_events_missing_atoms_get_zero(space, coarse):
    m = Measure.from_events(coarse, [(space.event(['a', 'b']), '1')])
    assert m.masses == (Fr(1), Fr(0))


def test_from_events_rejects_non_atoms(space, coarse):
    with pytest.raises(MassAlgebraMismatchError):
        Measure.from_events(coarse, [(space.event(['a']), '1')])
    with pytest.raises(MassAlgebraMismatchError):
        Measure.from_events(coarse, [(space.full(), '1')])
    with pytest.raises(MassAlgebraMismatchError):
        Measure.from_events(coarse, [(space.event(['a', 'b']), '1'), (space.event(['a', 'b']), '0')])


def test_from_events_zero_union(space):
    fine = from_blocks(space, [['a'], ['b'], ['c', 'd']])
    m = Measure.from_events(fine, [(space.event(['a', 'b']), '0'), (space.event(['c', 'd']), '1')])
    assert m.masses == (Fr(0), Fr(0), Fr(1))


def test_mass_and_outer(space, coarse):
    m = Measure(coarse, (Fr(1, 4), Fr(3, 4)))
    assert mass(m, space.event(['a', 'b'])) == Fr(1, 4)
    assert mass(m, space.full()) == 1
    assert mass(m, space.empty()) == 0
    with pytest.raises(NotMeasurableError):
        mass(m, space.event(['a']))
    assert outer_measure(m, space.event(['a'])) == Fr(1, 4)
    assert outer_measure(m, space.event(['a', 'c'])) == 1
    assert outer_measure(m, space.event(['c', 'd'])) == mass(m, space.event(['c', 'd']))


def test_support(space, coarse):
    m = Measure(coarse, (Fr(0), Fr(1)))
    assert support(m) == space.event(['c', 'd'])


def test_conditional(space):
    m = Measure(discrete_algebra(space), (Fr(1, 2), Fr(1, 4), Fr(1, 8), Fr(1, 8)))
    cond = conditional(m, space.event(['b', 'c']))
    assert cond.masses == (Fr(0), Fr(2, 3), Fr(1, 3), Fr(0))
    with pytest.raises(ZeroMassConditioningError):
        conditional(Measure(discrete_algebra(space), (Fr(1), Fr(0), Fr(0), Fr(0))), space.event(['b']))


def test_restrict(space, coarse):
    fine = Measure(discrete_algebra(space), (Fr(1, 2), Fr(1, 4), Fr(1, 8), Fr(1, 8)))
    res = restrict(fine, coarse)
    assert res.masses == (Fr(3, 4), Fr(1, 4))
    assert is_extension(fine, res)
    with pytest.raises(NotARefinementError):
        restrict(res, discrete_algebra(space))


def test_extension_vertices(space, coarse):
    prior = Measure(coarse, (Fr(1, 3), Fr(2, 3)))
    fine = from_blocks(space, [['a'], ['b'], ['c', 'd']])
    vertices = extension_vertices(prior, fine)
    assert vertex_count(coarse, fine) == 2
    assert [v.measure.masses for v in vertices] == [
        (Fr(1, 3), Fr(0), Fr(2, 3)),
        (Fr(0), Fr(1, 3), Fr(2, 3)),
    ]
    for v in vertices:
        assert is_extension(v.measure, prior)


def test_extension_vertex_cap(space, coarse):
    prior = Measure(coarse, (Fr(1, 3), Fr(2, 3)))
    fine = discrete_algebra(space)
    assert vertex_count(coarse, fine) == 4
    with pytest.raises(ExplosionError):
        next(iter_extension_vertices(prior, fine, cap=3))
    assert len(extension_vertices(prior, fine, cap=4)) == 4
