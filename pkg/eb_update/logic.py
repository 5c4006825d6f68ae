"""Propositional formulas, truth valuations over a valuation space and awareness-driven scenarios.

States of the valuation space over propositions ``p_0 .. p_{k-1}`` are the bit patterns
``0 .. 2^k - 1``: proposition ``i`` is true in state ``s`` iff bit ``i`` of ``s`` is set.
State labels spell the valuation, e.g. ``!rain&cold``.
"""
import functools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .algebra import Event, StateSpace, generate_algebra
from .decision import Bet, contains_discarded
from .engine import Chain, UpdatePair
from .errors import (AwarenessShrinkError, FormulaSyntaxError,
                     MassAlgebraMismatchError, NotMeasurableError,
                     UnknownPropositionError)
from .measures import Measure, parse_rational

logger = logging.getLogger('eb_update')

IDENT_RGX = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
TOKEN_RGX = re.compile(r'\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[!&|()]))')
KEYWORDS = ('T', 'F')


@dataclass(frozen=True)
class Top:
    """The always-true formula."""


@dataclass(frozen=True)
class Bottom:
    """The always-false formula."""


@dataclass(frozen=True)
class Prop:
    """A proposition letter."""
    name: str


@dataclass(frozen=True)
class Not:
    """Negation."""
    child: 'Formula'


@dataclass(frozen=True)
class And:
    """Conjunction."""
    left: 'Formula'
    right: 'Formula'


Formula = Union[Top, Bottom, Prop, Not, And]


def Or(left: Formula, right: Formula) -> Formula:  # pylint: disable=invalid-name
    """Disjunction, as !(!left & !right)."""
    return Not(And(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:  # pylint: disable=invalid-name
    """Implication, as !(left & !right)."""
    return Not(And(left, Not(right)))


class _Parser:
    """Recursive descent over the token stream; precedence ! > & > | > ->."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text: str) -> list[tuple[str, int]]:
        res = []
        i = 0
        while i < len(text):
            match = TOKEN_RGX.match(text, i)
            if not match:
                if text[i:].strip() == '':
                    break
                j = len(text) - len(text[i:].lstrip())
                raise FormulaSyntaxError(f'Unexpected character {text[j]!r}', j)
            tok = match.group('ident') or match.group('op')
            res.append((tok, match.start('ident') if match.group('ident') else match.start('op')))
            i = match.end()
        res.append(('', len(text)))
        return res

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def fail(self, msg: str):
        tok, where = self.tokens[self.pos]
        found = f'`{tok}`' if tok else 'end of input'
        raise FormulaSyntaxError(f'{msg}, found {found}', where)

    def take(self, tok: str):
        if self.peek() != tok:
            self.fail(f'Expected `{tok}`')
        self.pos += 1

    def parse(self) -> Formula:
        res = self.implication()
        if self.peek() != '':
            self.fail('Expected end of input')
        return res

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == '->':
            self.pos += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        res = self.conjunction()
        while self.peek() == '|':
            self.pos += 1
            res = Or(res, self.conjunction())
        return res

    def conjunction(self) -> Formula:
        res = self.unary()
        while self.peek() == '&':
            self.pos += 1
            res = And(res, self.unary())
        return res

    def unary(self) -> Formula:
        if self.peek() == '!':
            self.pos += 1
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == '(':
            self.pos += 1
            res = self.implication()
            self.take(')')
            return res
        if tok == 'T':
            self.pos += 1
            return Top()
        if tok == 'F':
            self.pos += 1
            return Bottom()
        if tok and IDENT_RGX.fullmatch(tok):
            self.pos += 1
            return Prop(tok)
        self.fail('Expected a proposition, `T`, `F`, `!` or `(`')
        return None  # unreachable


def parse(text: str) -> Formula:
    """Parse a formula; `|` and `->` are rewritten into negations and conjunctions."""
    return _Parser(text).parse()


def as_formula(formula: Formula | str) -> Formula:
    """Accept either a parsed formula or its text."""
    if isinstance(formula, str):
        return parse(formula)
    return formula


def format_formula(formula: Formula) -> str:
    """Render a formula so that `parse` gives back the same tree."""
    match formula:
        case Top():
            return 'T'
        case Bottom():
            return 'F'
        case Prop(name):
            return name
        case Not(child):
            if isinstance(child, And):
                return f'!({format_formula(child)})'
            return f'!{format_formula(child)}'
        case And(left, right):
            rhs = format_formula(right)
            if isinstance(right, And):
                rhs = f'({rhs})'
            return f'{format_formula(left)} & {rhs}'
    raise TypeError(f'Not a formula: {formula!r}')


def propositions_of(formula: Formula) -> frozenset[str]:
    """Proposition names occurring in a formula."""
    match formula:
        case Prop(name):
            return frozenset((name,))
        case Not(child):
            return propositions_of(child)
        case And(left, right):
            return propositions_of(left) | propositions_of(right)
    return frozenset()


def _check_props(props: Sequence[str]) -> tuple[str, ...]:
    props = tuple(props)
    for p in props:
        if p in KEYWORDS or not IDENT_RGX.fullmatch(p):
            raise UnknownPropositionError(f'`{p}` is not a valid proposition name.')
    if len(set(props)) != len(props):
        raise UnknownPropositionError(f'Duplicate propositions in {list(props)}.')
    return props


def valuation_label(props: Sequence[str], state: int) -> str:
    """Label of the valuation with bit pattern `state`."""
    if not props:
        return 'T'
    return '&'.join(p if state >> i & 1 else f'!{p}' for i, p in enumerate(props))


@functools.lru_cache(maxsize=64)
def _valuation_space(props: tuple[str, ...]) -> StateSpace:
    return StateSpace(tuple(valuation_label(props, s) for s in range(1 << len(props))))


def valuation_space(props: Sequence[str]) -> StateSpace:
    """The space of all 2^k truth valuations of the propositions."""
    return _valuation_space(_check_props(props))


def _truth_members(formula: Formula, props: tuple[str, ...], full: frozenset[int]) -> frozenset[int]:
    match formula:
        case Top():
            return full
        case Bottom():
            return frozenset()
        case Prop(name):
            try:
                i = props.index(name)
            except ValueError as e:
                raise UnknownPropositionError(f'Proposition `{name}` is not among {list(props)}.') from e
            return frozenset(s for s in full if s >> i & 1)
        case Not(child):
            return full - _truth_members(child, props, full)
        case And(left, right):
            return _truth_members(left, props, full) & _truth_members(right, props, full)
    raise TypeError(f'Not a formula: {formula!r}')


def truth_set(formula: Formula | str, props: Sequence[str]) -> Event:
    """The event of the valuations satisfying a formula."""
    space = valuation_space(props)
    props = tuple(props)
    members = _truth_members(as_formula(formula), props, frozenset(range(space.size)))
    return Event(space, members)


def entails(phi: Formula | str, psi: Formula | str, props: Sequence[str]) -> bool:
    """Semantic entailment: every valuation satisfying `phi` satisfies `psi`."""
    return truth_set(phi, props) <= truth_set(psi, props)


@dataclass(frozen=True)
class AwarenessSet:
    """Propositions an agent can use in one period."""
    props: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, 'props', frozenset(self.props))

    def __le__(self, other: 'AwarenessSet') -> bool:
        return self.props <= other.props

    def ordered(self, universe: Sequence[str]) -> list[str]:
        """The aware propositions in the order of `universe`."""
        return [p for p in universe if p in self.props]


@dataclass(frozen=True)
class SyntacticScenario:
    """Propositions, awareness per period and per-period masses on formulas."""
    props: tuple[str, ...]
    awareness: tuple[AwarenessSet, ...]
    masses: tuple[tuple[tuple[Formula, Fraction], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, 'props', _check_props(self.props))
        object.__setattr__(self, 'awareness', tuple(
            a if isinstance(a, AwarenessSet) else AwarenessSet(a) for a in self.awareness
        ))
        object.__setattr__(self, 'masses', tuple(
            tuple((as_formula(f), parse_rational(m)) for f, m in entries) for entries in self.masses
        ))


def awareness_algebra(props: Sequence[str], aware: Iterable[str]):
    """Algebra on the valuation space generated by the truth sets of the aware propositions."""
    space = valuation_space(props)
    return generate_algebra(space, [truth_set(Prop(p), props) for p in aware])


def compile_scenario(scenario: SyntacticScenario) -> Chain:
    """Turn a syntactic scenario into a chain of measures on the common valuation space."""
    props = scenario.props
    if len(scenario.masses) != len(scenario.awareness):
        raise MassAlgebraMismatchError(
            f'{len(scenario.awareness)} awareness sets but {len(scenario.masses)} period measures.'
        )
    for t, aware in enumerate(scenario.awareness):
        unknown = sorted(aware.props - set(props))
        if unknown:
            raise UnknownPropositionError(f'Period {t} is aware of unknown propositions {unknown}.')
    for t, (prev, nxt) in enumerate(zip(scenario.awareness, scenario.awareness[1:])):
        if not prev <= nxt:
            lost = sorted(prev.props - nxt.props)
            raise AwarenessShrinkError(f'Awareness shrinks from period {t} to {t + 1}: lost {lost}.')

    measures = []
    for t, (aware, entries) in enumerate(zip(scenario.awareness, scenario.masses)):
        algebra = awareness_algebra(props, aware.ordered(props))
        logger.debug(f'Period {t}: {len(algebra)} atoms from {len(aware.props)} aware propositions')
        measures.append(Measure.from_events(algebra, [(truth_set(f, props), m) for f, m in entries]))
    return Chain(tuple(measures))


def formula_bet(prize: str, formula: Formula | str, props: Sequence[str]) -> Bet:
    """The bet paying `prize` when `formula` is true."""
    return Bet(prize, truth_set(formula, props))


def is_discarded_formula(pair: UpdatePair, formula: Formula | str, props: Sequence[str]) -> bool:
    """A formula is discarded if its truth set is posterior-null while every coarse consequence is prior-non-null."""
    event = truth_set(formula, props)
    if not pair.fine.is_measurable(event):
        raise NotMeasurableError(f'{format_formula(as_formula(formula))} is not expressible at the posterior period.')
    if not event:
        return False
    found, certificate = contains_discarded(pair, event)
    return found and certificate == event
