"""Reading and writing scenario files.

A scenario is a JSON document with either ``states`` or ``propositions`` and a list of
``periods``. State based periods give an ``algebra`` (blocks of state labels), propositional
ones an ``aware`` list. Every period has a ``measure``: a list of ``{"event": [...], "mass": "p/q"}``
(or ``{"formula": "...", "mass": "p/q"}``) entries. Optional keys: ``utility`` (prize to utility
plus a ``worst`` key), ``expansion_states`` (extra states the last period lives on) and a free
text ``description``.
"""
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import Event, StateSpace, from_blocks
from .decision import UtilityIndex
from .engine import Chain, UpdatePair
from .errors import ScenarioError
from .logic import SyntacticScenario, compile_scenario, truth_set
from .measures import Measure, format_rational

logger = logging.getLogger('eb_update')

ALLOWED_KEYS = {'states', 'propositions', 'periods', 'utility', 'expansion_states', 'description'}


@dataclass(frozen=True)
class Scenario:
    """Measures of every period, ready for the engine."""
    periods: tuple[Measure, ...]
    utility: UtilityIndex | None = None
    propositions: tuple[str, ...] | None = None
    description: str = ''

    @property
    def is_expansion(self) -> bool:
        """True if the state space grows between the first and the last period."""
        return self.periods[0].space != self.periods[-1].space

    @property
    def space(self) -> StateSpace:
        """State space of the last period."""
        return self.periods[-1].space

    @cached_property
    def chain(self) -> Chain:
        """The periods as a refinement chain."""
        if self.is_expansion:
            raise ScenarioError('Scenarios with expansion_states do not form a chain; use `check`.')
        return Chain(self.periods)

    def pair(self, n: int = 0, m: int = 1) -> UpdatePair:
        """The update between two periods."""
        if len(self.periods) <= max(n, m):
            raise ScenarioError(f'The scenario has {len(self.periods)} period(s); period {max(n, m)} is needed.')
        return self.chain.pair(n, m)

    def event(self, text: str) -> Event:
        """Resolve an event given as a formula (propositional scenarios) or as comma separated states."""
        if self.propositions is not None:
            return truth_set(text, self.propositions)
        text = text.strip()
        if text.startswith('{') and text.endswith('}'):
            text = text[1:-1]
        labels = [lbl.strip() for lbl in text.split(',') if lbl.strip()]
        return self.space.event(labels)


def _require(cond: bool, msg: str):
    if not cond:
        raise ScenarioError(msg)


def _str_list(value: Any, what: str) -> list[str]:
    _require(
        isinstance(value, list) and all(isinstance(v, str) for v in value),
        f'`{what}` must be a list of strings.'
    )
    return value


def _entries(period: dict, key: str, t: int) -> list[tuple[Any, Any]]:
    measure = period.get('measure')
    _require(isinstance(measure, list) and measure, f'Period {t}: `measure` must be a nonempty list.')
    res = []
    for entry in measure:
        _require(
            isinstance(entry, dict) and set(entry) == {key, 'mass'},
            f'Period {t}: measure entries must have exactly the keys `{key}` and `mass`.'
        )
        res.append((entry[key], entry['mass']))
    return res


def _utility(data: dict) -> UtilityIndex | None:
    if 'utility' not in data:
        return None
    _require(isinstance(data['utility'], dict), '`utility` must be an object.')
    utility = dict(data['utility'])
    _require('worst' in utility, '`utility` needs a `worst` key.')
    worst = utility.pop('worst')
    return UtilityIndex.from_mapping(utility, worst)


def _state_periods(data: dict) -> tuple[Measure, ...]:
    space = StateSpace(tuple(_str_list(data['states'], 'states')))
    periods = data['periods']
    wide = space
    if 'expansion_states' in data:
        extra = _str_list(data['expansion_states'], 'expansion_states')
        _require(len(periods) == 2, 'Scenarios with `expansion_states` must have exactly two periods.')
        wide = StateSpace(space.labels + tuple(extra))

    res = []
    for t, period in enumerate(periods):
        _require(isinstance(period, dict) and 'algebra' in period, f'Period {t} needs an `algebra`.')
        period_space = space if t == 0 else wide
        blocks = period['algebra']
        _require(
            isinstance(blocks, list) and all(isinstance(b, list) for b in blocks),
            f'Period {t}: `algebra` must be a list of blocks.'
        )
        algebra = from_blocks(period_space, blocks)
        entries = [
            (period_space.event(_str_list(ev, 'event')), mass) for ev, mass in _entries(period, 'event', t)
        ]
        res.append(Measure.from_events(algebra, entries))
    return tuple(res)


def _syntactic(data: dict) -> SyntacticScenario:
    props = _str_list(data['propositions'], 'propositions')
    _require('expansion_states' not in data, '`expansion_states` requires a state based scenario.')
    awareness, masses = [], []
    for t, period in enumerate(data['periods']):
        _require(isinstance(period, dict) and 'aware' in period, f'Period {t} needs an `aware` list.')
        awareness.append(frozenset(_str_list(period['aware'], 'aware')))
        entries = _entries(period, 'formula', t)
        for formula, _ in entries:
            _require(isinstance(formula, str), f'Period {t}: formulas must be strings.')
        masses.append(tuple(entries))
    return SyntacticScenario(tuple(props), tuple(awareness), tuple(masses))


def scenario_from_dict(data: dict) -> Scenario:
    """Validate a decoded scenario document and build its measures."""
    _require(isinstance(data, dict), 'A scenario must be a JSON object.')
    unknown = sorted(set(data) - ALLOWED_KEYS)
    _require(not unknown, f'Unknown scenario keys: {unknown}')
    _require(('states' in data) != ('propositions' in data), 'Give exactly one of `states` or `propositions`.')
    _require(isinstance(data.get('periods'), list) and data['periods'], '`periods` must be a nonempty list.')

    description = data.get('description', '')
    if 'propositions' in data:
        syntactic = _syntactic(data)
        chain = compile_scenario(syntactic)
        return Scenario(chain.measures, _utility(data), syntactic.props, description)
    return Scenario(_state_periods(data), _utility(data), None, description)


def bundled_scenarios() -> list[str]:
    """Names of the scenarios shipped with the package."""
    root = resources.files('eb_update') / 'scenarios'
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith('.json'))


def read_scenario_text(source: str | Path) -> str:
    """Text of a scenario file, falling back on a bundled scenario of that name."""
    path = Path(source)
    if path.is_file():
        try:
            return path.read_text(encoding='utf-8')
        except OSError as e:
            raise ScenarioError(f'Cannot read {path}: {e}') from e
    name = str(source)
    if name in bundled_scenarios():
        logger.debug(f'Using bundled scenario `{name}`')
        return (resources.files('eb_update') / 'scenarios' / f'{name}.json').read_text(encoding='utf-8')
    raise ScenarioError(f'No scenario file or bundled scenario named `{source}`.')


def load_scenario(source: str | Path) -> Scenario:
    """Read, validate and build a scenario."""
    text = read_scenario_text(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f'Invalid JSON in `{source}`: {e}') from e
    return scenario_from_dict(data)


def _measure_entries(measure: Measure) -> list[dict]:
    return [{'event': atom.labels, 'mass': format_rational(m)} for atom, m in measure.items()]


def scenario_to_dict(scenario: Scenario) -> dict:
    """State based form of a scenario; propositional scenarios come out compiled."""
    first = scenario.periods[0]
    res = {'states': list(first.space.labels)}
    if scenario.is_expansion:
        res['expansion_states'] = [lbl for lbl in scenario.space.labels if lbl not in first.space.labels]
    res['periods'] = [
        {
            'algebra': [atom.labels for atom in measure.algebra.atoms],
            'measure': _measure_entries(measure),
        }
        for measure in scenario.periods
    ]
    if scenario.utility is not None:
        u = scenario.utility
        res['utility'] = {p: format_rational(v) for p, v in zip(u.prizes, u.utils)} | {'worst': u.worst}
    if scenario.description:
        res['description'] = scenario.description
    return res
