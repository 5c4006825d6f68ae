"""Finite state spaces, events and sigma-algebras stored as partitions."""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (CoverageError, EmptyBlockError, EmptyEventError,
                     InvalidSpaceError, OverlapError, SpaceMismatchError,
                     UnknownStateError)


@dataclass(frozen=True)
class StateSpace:
    """An ordered, finite set of named states."""
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        if not self.labels:
            raise InvalidSpaceError('A state space needs at least one state.')
        if len(set(self.labels)) != len(self.labels):
            dup = sorted({lbl for lbl in self.labels if self.labels.count(lbl) > 1})
            raise InvalidSpaceError(f'Duplicate state labels: {dup}')

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lbl: i for i, lbl in enumerate(self.labels)}

    @property
    def size(self) -> int:
        """Number of states."""
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        """Position of a state label."""
        try:
            return self._index[label]
        except KeyError as e:
            raise UnknownStateError(f'Unknown state `{label}`') from e

    def event(self, labels: Iterable[str]) -> 'Event':
        """Build an event from state labels."""
        return Event(self, frozenset(self.index(lbl) for lbl in labels))

    def full(self) -> 'Event':
        """The sure event."""
        return Event(self, frozenset(range(self.size)))

    def empty(self) -> 'Event':
        """The impossible event."""
        return Event(self, frozenset())


@dataclass(frozen=True)
class Event:
    """A set of state indices of a given state space."""
    space: StateSpace = field(repr=False)
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(self.members))
        bad = [i for i in self.members if not 0 <= i < self.space.size]
        if bad:
            raise UnknownStateError(f'State indices out of range: {sorted(bad)}')

    def _check(self, other: 'Event'):
        if self.space != other.space:
            raise SpaceMismatchError('Events live on different state spaces.')

    def __and__(self, other: 'Event') -> 'Event':
        self._check(other)
        return Event(self.space, self.members & other.members)

    def __or__(self, other: 'Event') -> 'Event':
        self._check(other)
        return Event(self.space, self.members | other.members)

    def __sub__(self, other: 'Event') -> 'Event':
        self._check(other)
        return Event(self.space, self.members - other.members)

    def __le__(self, other: 'Event') -> bool:
        self._check(other)
        return self.members <= other.members

    def __lt__(self, other: 'Event') -> bool:
        self._check(other)
        return self.members < other.members

    def __ge__(self, other: 'Event') -> bool:
        return other <= self

    def __len__(self):
        return len(self.members)

    def __bool__(self):
        return bool(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __contains__(self, index: int) -> bool:
        return index in self.members

    def complement(self) -> 'Event':
        """Complement with respect to the full state space."""
        return Event(self.space, frozenset(range(self.space.size)) - self.members)

    def isdisjoint(self, other: 'Event') -> bool:
        """True if the two events share no state."""
        self._check(other)
        return self.members.isdisjoint(other.members)

    @property
    def labels(self) -> list[str]:
        """State labels in space order."""
        return [self.space.labels[i] for i in self]

    @property
    def least(self) -> int:
        """Smallest member index (used for canonical ordering)."""
        if not self.members:
            raise EmptyEventError('The empty event has no least member.')
        return min(self.members)

    def __str__(self):
        return '{' + ','.join(self.labels) + '}'


@dataclass(frozen=True)
class Algebra:
    """A finite sigma-algebra, stored as its partition into atoms in canonical order."""
    space: StateSpace = field(repr=False)
    atoms: tuple[Event, ...]

    def __post_init__(self):
        object.__setattr__(self, 'atoms', tuple(sorted(self.atoms, key=lambda a: a.least)))

    @cached_property
    def _atom_of(self) -> tuple[int, ...]:
        res = [0] * self.space.size
        for i, atom in enumerate(self.atoms):
            for s in atom.members:
                res[s] = i
        return tuple(res)

    def __len__(self):
        return len(self.atoms)

    def atom_index(self, state: int) -> int:
        """Index of the atom containing a state."""
        return self._atom_of[state]

    def check_event(self, event: Event):
        """Raise if the event is not over this algebra's space."""
        if event.space != self.space:
            raise SpaceMismatchError('Event and algebra live on different state spaces.')

    def atoms_meeting(self, event: Event) -> list[int]:
        """Indices of the atoms intersecting an event."""
        self.check_event(event)
        return sorted({self._atom_of[s] for s in event.members})

    def atoms_within(self, event: Event) -> list[int]:
        """Indices of the atoms contained in an event."""
        self.check_event(event)
        return [i for i, atom in enumerate(self.atoms) if atom.members <= event.members]

    def is_measurable(self, event: Event) -> bool:
        """True if the event is a union of atoms."""
        return measurable_hull(self, event) == event

    def union(self, indices: Iterable[int]) -> Event:
        """Union of the atoms with the given indices."""
        members = frozenset()
        for i in indices:
            members |= self.atoms[i].members
        return Event(self.space, members)

    def events(self) -> Iterator[Event]:
        """All measurable events, ordered by the bitmask of their atom indices."""
        for mask in range(1 << len(self.atoms)):
            yield self.union(i for i in range(len(self.atoms)) if mask >> i & 1)

    def sub_atoms(self, coarse_atom: Event) -> list[int]:
        """Indices of the atoms of this (finer) algebra lying inside a coarse atom."""
        return self.atoms_within(coarse_atom)

    def __str__(self):
        return '[' + ', '.join(str(a) for a in self.atoms) + ']'


def make_algebra(space: StateSpace, blocks: Sequence[Event]) -> Algebra:
    """Validate a list of blocks as a partition of the state space and return its algebra."""
    seen = set()
    for block in blocks:
        if block.space != space:
            raise SpaceMismatchError('Block does not belong to the given state space.')
        if not block:
            raise EmptyBlockError('Partition blocks must be nonempty.')
        overlap = seen & block.members
        if overlap:
            names = [space.labels[i] for i in sorted(overlap)]
            raise OverlapError(f'States {names} appear in more than one block.')
        seen |= block.members
    if len(seen) != space.size:
        missing = [lbl for i, lbl in enumerate(space.labels) if i not in seen]
        raise CoverageError(f'Blocks do not cover the state space; missing {missing}.')
    return Algebra(space, tuple(blocks))


def discrete_algebra(space: StateSpace) -> Algebra:
    """The power set of the space."""
    return Algebra(space, tuple(Event(space, {i}) for i in range(space.size)))


def trivial_algebra(space: StateSpace) -> Algebra:
    """The algebra {empty, full}."""
    return Algebra(space, (space.full(),))


def generate_algebra(space: StateSpace, events: Sequence[Event]) -> Algebra:
    """Coarsest algebra in which every given event is measurable."""
    signature: dict[tuple[bool, ...], set[int]] = {}
    for event in events:
        if event.space != space:
            raise SpaceMismatchError('Generator does not belong to the given state space.')
    for s in range(space.size):
        key = tuple(s in event.members for event in events)
        signature.setdefault(key, set()).add(s)
    return Algebra(space, tuple(Event(space, cell) for cell in signature.values()))


def refines(fine: Algebra, coarse: Algebra) -> bool:
    """True if every atom of `coarse` is a union of atoms of `fine`."""
    if fine.space != coarse.space:
        raise SpaceMismatchError('Algebras live on different state spaces.')
    return all(
        len({coarse.atom_index(s) for s in atom.members}) == 1
        for atom in fine.atoms
    )


def measurable_hull(algebra: Algebra, event: Event) -> Event:
    """Smallest measurable superset of an event (union of the atoms it meets)."""
    return algebra.union(algebra.atoms_meeting(event))


def is_completely_nonmeasurable(coarse: Algebra, event: Event) -> bool:
    """True if the (nonempty) event contains no nonempty coarse-measurable subset."""
    coarse.check_event(event)
    if not event:
        raise EmptyEventError('Complete non-measurability is defined for nonempty events.')
    return not coarse.atoms_within(event)


def trace_algebra(algebra: Algebra, event: Event, subspace: StateSpace) -> Algebra:
    """The trace {A & event} of an algebra, transported onto `subspace` by state label.

    `subspace` must carry exactly the labels of `event`.
    """
    algebra.check_event(event)
    if set(subspace.labels) != set(event.labels):
        raise SpaceMismatchError('Subspace labels do not match the event.')
    cells = []
    for atom in algebra.atoms:
        cell = atom & event
        if cell:
            cells.append(subspace.event(cell.labels))
    return Algebra(subspace, tuple(cells))


def as_space(labels: Sequence[str] | StateSpace) -> StateSpace:
    """Coerce a sequence of labels into a StateSpace."""
    if isinstance(labels, StateSpace):
        return labels
    return StateSpace(tuple(labels))


def from_blocks(space: StateSpace, blocks: Sequence[Sequence[str]]) -> Algebra:
    """Build an algebra from blocks given as lists of state labels."""
    return make_algebra(space, [space.event(block) for block in blocks])
