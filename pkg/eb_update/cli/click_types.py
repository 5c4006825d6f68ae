"""Custom click parameter types for the eb_update CLI."""
from click.shell_completion import CompletionItem

from ..errors import InputError
from ..scenario import Scenario, bundled_scenarios, load_scenario

try:
    import rich_click as click
except ImportError:
    import click


class ScenarioType(click.ParamType):
    """A scenario file path or the name of a bundled scenario."""
    name = 'scenario'

    def convert(self, value, param, ctx) -> Scenario:
        if isinstance(value, Scenario):
            return value
        try:
            return load_scenario(value)
        except InputError as e:
            self.fail(f'{value}: {e}', param, ctx)
        return None  # unreachable

    def shell_complete(self, ctx: click.Context, param: click.Parameter, incomplete: str):
        """Complete bundled scenario names, then fall back on files."""
        res = [
            CompletionItem(name, help='bundled scenario')
            for name in bundled_scenarios()
            if name.startswith(incomplete)
        ]
        res.append(CompletionItem(incomplete, type='file'))
        return res
