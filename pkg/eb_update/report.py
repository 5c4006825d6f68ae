"""Report dictionaries and their JSON/text renderings. All rationals are emitted as "p/q" strings."""
import json
from fractions import Fraction
from typing import Any

from .algebra import Event
from .decision import ConsistencyReport
from .engine import ChainReport, UpdateReport, Violation, Witness
from .measures import Measure, format_rational


def _rat(value: Fraction | None) -> str | None:
    return None if value is None else format_rational(value)


def event_list(event: Event) -> list[str]:
    """An event as its state labels."""
    return event.labels


def measure_dict(measure: Measure) -> list[dict]:
    """A measure as (atom, mass) entries in canonical atom order."""
    return [{'event': event_list(atom), 'mass': format_rational(m)} for atom, m in measure.items()]


def violation_dict(violation: Violation | None) -> dict | None:
    """A violation with its events."""
    if violation is None:
        return None
    return {
        'condition': violation.condition,
        'events': [event_list(e) for e in violation.events],
        'detail': violation.detail,
    }


def witness_dict(witness: Witness | None) -> dict | None:
    """The interim measure and its beta."""
    if witness is None:
        return None
    return {'beta': format_rational(witness.beta), 'interim': measure_dict(witness.interim)}


def update_report_dict(report: UpdateReport) -> dict:
    """Everything in an UpdateReport."""
    res = {
        'status': report.status.value,
        'witness': witness_dict(report.witness),
        'violation': violation_dict(report.violation),
        'completely_nonmeasurable': report.completely_nonmeasurable,
        'reverse_bayesian': report.reverse_bayesian,
        'inf_ratio': _rat(report.inf_ratio),
        'outer_evidence': format_rational(report.outer_evidence),
    }
    if report.generalized_reverse_bayesian is not None:
        res['generalized_reverse_bayesian'] = report.generalized_reverse_bayesian
    return res


def chain_report_dict(report: ChainReport, bad_periods: list[int] = None) -> dict:
    """Pair reports (n < m) and the common witness."""
    res = {
        'holds': report.holds,
        'links': [
            {'from': n, 'to': m, **update_report_dict(r)}
            for (n, m), r in sorted(report.links.items())
        ],
        'common_witness': None if report.witness is None else measure_dict(report.witness),
        'trivial_link': report.trivial_link,
    }
    if bad_periods is not None:
        res['witness_failures'] = bad_periods
    return res


def consistency_dict(report: ConsistencyReport, discarded: list[Event], reversals: list[dict] = None) -> dict:
    """Extension consistency with the discarded atoms and, when a utility is known, explicit reversals."""
    res = {
        'consistent': report.consistent,
        'violation': violation_dict(report.violation),
        'discarded_atoms': [event_list(e) for e in discarded],
    }
    if reversals is not None:
        res['reversals'] = reversals
    return res


def bounds_dict(
        given: Event, target: Event, inner: Fraction, outer: Fraction,
        posterior: Fraction = None
    ) -> dict:
    """Inner and outer conditional probabilities."""
    res = {
        'given': event_list(given),
        'target': event_list(target),
        'inner': format_rational(inner),
        'outer': format_rational(outer),
    }
    if posterior is not None:
        res['posterior'] = format_rational(posterior)
        res['within_envelope'] = inner <= posterior <= outer
    return res


def to_json(data: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation."""
    return json.dumps(data, sort_keys=True, indent=2)


def _scalar(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    return str(value)


def _is_labels(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(v, str) for v in value)


def _text_lines(data: Any, indent: int) -> list[str]:
    pad = ' ' * indent
    if isinstance(data, dict):
        if set(data) == {'event', 'mass'}:
            return [f"{pad}{'{' + ','.join(data['event']) + '}'} : {data['mass']}"]
        simple = {k: v for k, v in data.items() if not isinstance(v, (dict, list)) or _is_labels(v)}
        width = max((len(k) for k in data), default=0)
        res = []
        for key in sorted(data):
            value = data[key]
            if key in simple:
                shown = '{' + ','.join(value) + '}' if _is_labels(value) else _scalar(value)
                res.append(f'{pad}{key:<{width}s} : {shown}')
            else:
                res.append(f'{pad}{key}:')
                res.extend(_text_lines(value, indent + 2))
        return res
    if isinstance(data, list):
        if not data:
            return [f'{pad}-']
        res = []
        for item in data:
            if isinstance(item, dict) and set(item) != {'event', 'mass'}:
                sub = _text_lines(item, indent + 2)
                res.append(f'{pad}- ' + sub[0].lstrip())
                res.extend(sub[1:])
            elif item == [] or _is_labels(item):
                res.append(f"{pad}{'{' + ','.join(item) + '}'}")
            else:
                res.extend(_text_lines(item, indent))
        return res
    return [f'{pad}{_scalar(data)}']


def to_text(data: Any) -> str:
    """Aligned human readable rendering of a report dictionary."""
    return '\n'.join(_text_lines(data, 0))


def render(data: Any, fmt: str) -> str:
    """Render a report in the requested format."""
    if fmt == 'json':
        return to_json(data)
    return to_text(data)
