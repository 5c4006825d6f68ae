"""Fixtures and brute-force oracles for the tests."""
import itertools
from fractions import Fraction as Fr

import pytest
from hypothesis import strategies as st

from eb_update.algebra import StateSpace, discrete_algebra, from_blocks
from eb_update.engine import Chain, UpdatePair
from eb_update.logic import And, Bottom, Not, Prop, Top
from eb_update.measures import Measure


def measure(space: StateSpace, blocks, masses) -> Measure:
    """Measure on the algebra with the given label blocks."""
    return Measure(from_blocks(space, blocks), tuple(Fr(m) for m in masses))


@pytest.fixture
def diagnosis_space():
    """States of the diagnosis example."""
    return StateSpace(('wA', 'wB', 'wC1', 'wC2'))


@pytest.fixture
def diagnosis_pair(diagnosis_space):
    """Diagnosis example: C2 is ruled out after C is split."""
    prior = measure(diagnosis_space, [['wA'], ['wB'], ['wC1', 'wC2']], ['1/2', '1/4', '1/4'])
    posterior = Measure(discrete_algebra(diagnosis_space), (Fr(4, 7), Fr(2, 7), Fr(1, 7), Fr(0)))
    return UpdatePair(prior, posterior)


@pytest.fixture
def five_state_chain():
    """Three periods on five states admitting the common witness (1/8, 1/8, 1/4, 1/4, 1/4)."""
    space = StateSpace(('w1', 'w2', 'w3', 'w4', 'w5'))
    return Chain((
        measure(space, [['w1', 'w2', 'w3'], ['w4', 'w5']], ['1/2', '1/2']),
        measure(space, [['w1', 'w2'], ['w3'], ['w4', 'w5']], ['0', '1/3', '2/3']),
        Measure(discrete_algebra(space), (Fr(0), Fr(0), Fr(1, 2), Fr(1, 2), Fr(0))),
    ))


@pytest.fixture
def measure_zero_chain():
    """Every step conditions on a prior-null event."""
    space = StateSpace(('w1', 'w2', 'w3'))
    algebra = discrete_algebra(space)
    return Chain((
        Measure(algebra, (Fr(0), Fr(1, 3), Fr(2, 3))),
        Measure(algebra, (Fr(1), Fr(0), Fr(0))),
        Measure(algebra, (Fr(0), Fr(2, 3), Fr(1, 3))),
    ))


@pytest.fixture
def product_pair():
    """A second coin is discovered and it is learned to have landed on A."""
    space = StateSpace(('HA', 'HB', 'TA', 'TB'))
    prior = measure(space, [['HA', 'HB'], ['TA', 'TB']], ['1/2', '1/2'])
    posterior = Measure(discrete_algebra(space), (Fr(3, 4), Fr(0), Fr(1, 4), Fr(0)))
    return UpdatePair(prior, posterior)


@pytest.fixture
def two_state_pair():
    """Same discrete algebra, posterior moves mass from a to b without any evidence."""
    space = StateSpace(('a', 'b'))
    algebra = discrete_algebra(space)
    return UpdatePair(Measure(algebra, (Fr(1, 2), Fr(1, 2))), Measure(algebra, (Fr(1, 4), Fr(3, 4))))


def compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def free_parameters(prior: Measure, fine) -> int:
    """Number of free block-splitting parameters of the extensions of `prior` to `fine`."""
    return sum(
        len(fine.sub_atoms(atom)) - 1
        for atom, m in prior.items() if m > 0
    )


def grid_extensions(prior: Measure, fine, steps: int = 4):
    """Extensions of `prior` splitting every coarse atom's mass in multiples of 1/steps.

    Every extension vertex is among them.
    """
    blocks = []
    for atom, m in prior.items():
        subs = fine.sub_atoms(atom)
        if m == 0:
            blocks.append([{i: Fr(0) for i in subs}])
            continue
        blocks.append([
            {i: m * Fr(k, steps) for i, k in zip(subs, split)}
            for split in compositions(steps, len(subs))
        ])
    for choice in itertools.product(*blocks):
        masses = [Fr(0)] * len(fine.atoms)
        for block in choice:
            for i, m in block.items():
                masses[i] = m
        yield Measure(fine, tuple(masses))


def grid_reversal(e0, e1, f0, f1, limit: int = 64) -> bool:
    """Brute-force search of a utility ratio u(x)/u(y) = p/q making x_F >= y_E before and y_E > x_F after."""
    for q in range(1, limit + 1):
        for p in range(limit + 1):
            lam = Fr(p, q)
            if lam * f0 >= e0 and lam * f1 < e1:
                return True
    return False


PROPS = ('p', 'q', 'r')

formulas = st.recursive(
    st.one_of(st.just(Top()), st.just(Bottom()), st.sampled_from(PROPS).map(Prop)),
    lambda children: st.one_of(
        children.map(Not),
        st.tuples(children, children).map(lambda t: And(*t)),
    ),
    max_leaves=12,
)


def evaluate(formula, valuation: dict) -> bool:
    """Truth-table evaluation of a formula."""
    match formula:
        case Top():
            return True
        case Bottom():
            return False
        case Prop(name):
            return valuation[name]
        case Not(child):
            return not evaluate(child, valuation)
        case And(left, right):
            return evaluate(left, valuation) and evaluate(right, valuation)
    raise TypeError(formula)


def valuations():
    """Bit pattern and truth assignment of every valuation of PROPS."""
    for state in range(1 << len(PROPS)):
        yield state, {p: bool(state >> i & 1) for i, p in enumerate(PROPS)}
