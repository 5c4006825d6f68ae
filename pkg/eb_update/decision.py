"""Subjective expected utility bets, null and discarded events, and extension consistency."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import settings
from .algebra import Event
from .engine import UpdatePair, Violation
from .errors import (InvalidUtilityError, NotMeasurableError,
                     TooManyAtomsError, UnknownPrizeError)
from .measures import Measure, mass, outer_measure, parse_rational

logger = logging.getLogger('eb_update')


@dataclass(frozen=True)
class UtilityIndex:
    """A finite utility index over prize labels with a designated worst prize of utility 0."""
    prizes: tuple[str, ...]
    utils: tuple[Fraction, ...]
    worst: str

    def __post_init__(self):
        object.__setattr__(self, 'prizes', tuple(self.prizes))
        object.__setattr__(self, 'utils', tuple(parse_rational(u) for u in self.utils))
        if len(self.prizes) != len(self.utils):
            raise InvalidUtilityError('One utility per prize is required.')
        if len(set(self.prizes)) != len(self.prizes):
            raise InvalidUtilityError('Prize labels must be distinct.')
        if any(u < 0 for u in self.utils):
            raise InvalidUtilityError('Utilities must be non-negative.')
        if self.worst not in self.prizes:
            raise InvalidUtilityError(f'Worst prize `{self.worst}` is not a prize.')
        if self.utility(self.worst) != 0:
            raise InvalidUtilityError('The worst prize must have utility 0.')
        if not any(u > 0 for u in self.utils):
            raise InvalidUtilityError('At least one prize must have positive utility.')

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str | int | Fraction], worst: str) -> 'UtilityIndex':
        """Build from a {prize: utility} mapping."""
        return cls(tuple(mapping), tuple(mapping.values()), worst)

    def utility(self, prize: str) -> Fraction:
        """Utility of a prize."""
        try:
            return self.utils[self.prizes.index(prize)]
        except ValueError as e:
            raise UnknownPrizeError(f'Unknown prize `{prize}`') from e


@dataclass(frozen=True)
class Bet:
    """Pays `prize` on `event` and the worst prize otherwise."""
    prize: str
    event: Event


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of the extension-consistency check."""
    consistent: bool
    violation: Violation | None = None


def bet_value(measure: Measure, u: UtilityIndex, bet: Bet) -> Fraction:
    """Expected utility of a two-outcome bet."""
    return u.utility(bet.prize) * mass(measure, bet.event)


def preference(measure: Measure, u: UtilityIndex, first: Bet, second: Bet) -> int:
    """Compare two bets: 1 if `first` is strictly preferred, -1 if `second` is, 0 if indifferent."""
    a = bet_value(measure, u, first)
    b = bet_value(measure, u, second)
    return (a > b) - (a < b)


def _require_measurable(algebra, event: Event, what: str):
    if not algebra.is_measurable(event):
        raise NotMeasurableError(f'{what} {event} is not measurable in {algebra}.')


def contains_discarded(pair: UpdatePair, event: Event) -> tuple[bool, Event | None]:
    """Whether a fine-measurable event contains a discarded sub-event.

    The largest posterior-null sub-event is a certificate iff it has positive prior outer measure.
    """
    _require_measurable(pair.fine, event, 'Event')
    null = pair.fine.union(
        i for i in pair.fine.atoms_within(event) if pair.posterior.atom_mass(i) == 0
    )
    if null and outer_measure(pair.prior, null) > 0:
        return True, null
    return False, None


def reversal_possible(pair: UpdatePair, e: Event, f: Event) -> bool:
    """Whether some prizes x, y give x_F weakly preferred to y_E at time 0 but y_E strictly preferred at time 1."""
    _require_measurable(pair.coarse, e, 'Event E')
    _require_measurable(pair.coarse, f, 'Event F')
    p0e, p0f = mass(pair.prior, e), mass(pair.prior, f)
    p1e, p1f = mass(pair.posterior, e), mass(pair.posterior, f)
    if p1e * p0f > p0e * p1f:
        return True
    return p0f == 0 and p0e == 0 and p1e > 0


def discarded_atoms(pair: UpdatePair) -> list[bool]:
    """For each coarse atom: positive prior mass and a posterior-null fine sub-atom."""
    res = []
    for c, atom in enumerate(pair.coarse.atoms):
        subs = pair.fine.sub_atoms(atom)
        res.append(
            pair.prior.atom_mass(c) > 0 and any(pair.posterior.atom_mass(i) == 0 for i in subs)
        )
    return res


def check_extension_consistency(pair: UpdatePair, max_atoms: int = None) -> ConsistencyReport:
    """Every possible preference reversal against F must be explained by a discarded sub-event of F.

    Coarse events F are enumerated in bitmask order. For a fixed F the existence of a
    reversing E reduces to single atoms (the reversal margin is additive over atoms), so the
    first reversing E in bitmask order is always a singleton atom.
    """
    max_atoms = settings.MAX_CONSISTENCY_ATOMS if max_atoms is None else max_atoms
    atoms = pair.coarse.atoms
    k = len(atoms)
    if k > max_atoms:
        raise TooManyAtomsError(f'{k} coarse atoms exceed the enumeration cap of {max_atoms}.')

    p0 = list(pair.prior.masses)
    p1 = [mass(pair.posterior, atom) for atom in atoms]
    flagged = discarded_atoms(pair)

    mass0 = [Fraction(0)] * (1 << k)
    mass1 = [Fraction(0)] * (1 << k)
    has_discarded = [False] * (1 << k)
    for mask in range(1, 1 << k):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        mass0[mask] = mass0[rest] + p0[low]
        mass1[mask] = mass1[rest] + p1[low]
        has_discarded[mask] = has_discarded[rest] or flagged[low]

    for mask in range(1 << k):
        if has_discarded[mask]:
            continue
        f0, f1 = mass0[mask], mass1[mask]
        for a in range(k):
            if p1[a] * f0 > p0[a] * f1 or (f0 == 0 and p0[a] == 0 and p1[a] > 0):
                f = pair.coarse.union(i for i in range(k) if mask >> i & 1)
                violation = Violation(
                    'extension-consistency', (atoms[a], f),
                    'a preference reversal against F is possible yet F contains no discarded sub-event'
                )
                logger.debug(str(violation))
                return ConsistencyReport(False, violation)
    return ConsistencyReport(True)
