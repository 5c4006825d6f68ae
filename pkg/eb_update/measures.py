"""Exact-rational probability measures on finite algebras."""
import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import settings
from .algebra import Algebra, Event, measurable_hull, refines
from .errors import (AlgebraMismatchError, ExplosionError,
                     InvalidMeasureError, InvalidRationalError,
                     MassAlgebraMismatchError, NotARefinementError,
                     NotMeasurableError, ZeroMassConditioningError)

logger = logging.getLogger('eb_update')

RATIONAL_RGX = re.compile(r'^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?P<den>\d+)\s*)?$')


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Read an exact rational from "p/q", "k", an int or a Fraction. Floats are rejected."""
    if isinstance(value, bool):
        raise InvalidRationalError(f'Not a rational: {value!r}')
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InvalidRationalError(f'Rationals must be given as "p/q" strings, got {type(value).__name__} {value!r}')
    match = RATIONAL_RGX.match(value)
    if not match:
        raise InvalidRationalError(f'Not a rational: {value!r}')
    den = int(match.group('den') or 1)
    if den == 0:
        raise InvalidRationalError(f'Zero denominator: {value!r}')
    return Fraction(int(match.group('num')), den)


def format_rational(value: Fraction) -> str:
    """Canonical string form: "p/q" in lowest terms, or "k" for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


@dataclass(frozen=True)
class Measure:
    """A probability measure: one exact mass per atom of an algebra."""
    algebra: Algebra
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        masses = tuple(Fraction(m) for m in self.masses)
        object.__setattr__(self, 'masses', masses)
        if len(masses) != len(self.algebra.atoms):
            raise InvalidMeasureError(
                f'Expected {len(self.algebra.atoms)} masses, got {len(masses)}.'
            )
        neg = [str(a) for a, m in zip(self.algebra.atoms, masses) if m < 0]
        if neg:
            raise InvalidMeasureError(f'Negative mass on atoms {neg}.')
        total = sum(masses, Fraction(0))
        if total != 1:
            raise InvalidMeasureError(f'Masses sum to {format_rational(total)}, not 1.')

    @classmethod
    def from_events(cls, algebra: Algebra, entries: Iterable[tuple[Event, Fraction]]) -> 'Measure':
        """Build a measure from (event, mass) entries.

        Each event must be a nonempty union of atoms; an event spanning several atoms
        may only carry mass 0. Atoms not mentioned get mass 0.
        """
        masses: dict[int, Fraction] = {}
        for event, mass in entries:
            mass = parse_rational(mass)
            if event.space != algebra.space or not event or not algebra.is_measurable(event):
                raise MassAlgebraMismatchError(f'Event {event} is not a nonempty union of atoms of {algebra}.')
            indices = algebra.atoms_within(event)
            if len(indices) > 1 and mass != 0:
                raise MassAlgebraMismatchError(
                    f'Event {event} spans {len(indices)} atoms; only atoms can carry positive mass.'
                )
            for i in indices:
                if i in masses:
                    raise MassAlgebraMismatchError(f'Atom {algebra.atoms[i]} is assigned a mass twice.')
                masses[i] = mass
        return cls(algebra, tuple(masses.get(i, Fraction(0)) for i in range(len(algebra.atoms))))

    @property
    def space(self):
        """The underlying state space."""
        return self.algebra.space

    def atom_mass(self, index: int) -> Fraction:
        """Mass of the atom with the given index."""
        return self.masses[index]

    def items(self) -> Iterator[tuple[Event, Fraction]]:
        """(atom, mass) pairs in canonical order."""
        return zip(self.algebra.atoms, self.masses)

    def __str__(self):
        return '(' + ', '.join(format_rational(m) for m in self.masses) + ')'


@dataclass(frozen=True)
class ExtensionVertex:
    """A vertex of the set of extensions: every coarse atom sends its mass to one fine sub-atom."""
    assignment: tuple[Event, ...]
    measure: Measure = field(compare=False)


def _require_measurable(measure: Measure, event: Event):
    if measurable_hull(measure.algebra, event) != event:
        raise NotMeasurableError(f'Event {event} is not measurable in {measure.algebra}.')


def mass(measure: Measure, event: Event) -> Fraction:
    """Measure of a measurable event."""
    _require_measurable(measure, event)
    return sum((measure.masses[i] for i in measure.algebra.atoms_within(event)), Fraction(0))


def support(measure: Measure) -> Event:
    """Union of the atoms with strictly positive mass."""
    return measure.algebra.union(i for i, m in enumerate(measure.masses) if m > 0)


def outer_measure(measure: Measure, event: Event) -> Fraction:
    """Mass of the measurable hull; equals `mass` on measurable events."""
    return sum((measure.masses[i] for i in measure.algebra.atoms_meeting(event)), Fraction(0))


def conditional(measure: Measure, event: Event) -> Measure:
    """Condition on a measurable event of positive mass."""
    total = mass(measure, event)
    if total == 0:
        raise ZeroMassConditioningError(f'Cannot condition on {event}: it has measure 0.')
    inside = set(measure.algebra.atoms_within(event))
    return Measure(
        measure.algebra,
        tuple(m / total if i in inside else Fraction(0) for i, m in enumerate(measure.masses))
    )


def restrict(measure: Measure, coarse: Algebra) -> Measure:
    """Restriction to a coarser algebra."""
    if not refines(measure.algebra, coarse):
        raise NotARefinementError(f'{measure.algebra} does not refine {coarse}.')
    masses = [Fraction(0)] * len(coarse.atoms)
    for atom, m in measure.items():
        masses[coarse.atom_index(atom.least)] += m
    return Measure(coarse, tuple(masses))


def is_extension(fine_measure: Measure, coarse_measure: Measure) -> bool:
    """True if `fine_measure` restricts to `coarse_measure`."""
    return restrict(fine_measure, coarse_measure.algebra) == coarse_measure


def vertex_count(coarse: Algebra, fine: Algebra) -> int:
    """Number of extension vertices: product of the sub-atom counts of the coarse atoms."""
    return math.prod(len(fine.sub_atoms(atom)) for atom in coarse.atoms)


def _choices(coarse_measure: Measure, fine: Algebra, cap: int) -> list[list[int]]:
    coarse = coarse_measure.algebra
    if not refines(fine, coarse):
        raise NotARefinementError(f'{fine} does not refine {coarse}.')
    count = vertex_count(coarse, fine)
    if count > cap:
        raise ExplosionError(f'{count} extension vertices exceed the cap of {cap}.')
    logger.debug(f'Enumerating {count} extension vertices')
    return [fine.sub_atoms(atom) for atom in coarse.atoms]


def _vertex_measure(coarse_measure: Measure, fine: Algebra, choice: Sequence[int]) -> Measure:
    masses = [Fraction(0)] * len(fine.atoms)
    for coarse_idx, fine_idx in enumerate(choice):
        masses[fine_idx] += coarse_measure.masses[coarse_idx]
    return Measure(fine, tuple(masses))


def iter_extension_vertices(coarse_measure: Measure, fine: Algebra, cap: int = None) -> Iterator[ExtensionVertex]:
    """Stream the extension vertices in lexicographic order of the choice functions."""
    cap = settings.VERTEX_CAP if cap is None else cap
    choices = _choices(coarse_measure, fine, cap)
    for choice in itertools.product(*choices):
        yield ExtensionVertex(
            assignment=tuple(fine.atoms[i] for i in choice),
            measure=_vertex_measure(coarse_measure, fine, choice),
        )


def extension_vertices(coarse_measure: Measure, fine: Algebra, cap: int = None) -> list[ExtensionVertex]:
    """All extension vertices of a measure to a finer algebra."""
    return list(iter_extension_vertices(coarse_measure, fine, cap=cap))


def check_same_algebra(measure: Measure, algebra: Algebra):
    """Raise if a measure is not defined on the given algebra."""
    if measure.algebra != algebra:
        raise AlgebraMismatchError(f'Measure is defined on {measure.algebra}, expected {algebra}.')
