"""Progress display for the randomized sweeps: one bar per sweep with a running failure count."""
from contextlib import contextmanager
from typing import Iterable, Iterator

from .settings import STDERR_CONSOLE

HAVE_RICH = False

try:
    from rich.progress import (BarColumn, MofNCompleteColumn, Progress,
                               SpinnerColumn, TaskID, TextColumn,
                               TimeElapsedColumn)
except ImportError:
    SWEEP_PROGRESS = None
else:
    import atexit
    SWEEP_PROGRESS: Progress = Progress(
        SpinnerColumn(),
        TextColumn('[progress.description]{task.description}'),
        BarColumn(),
        MofNCompleteColumn(),
        TextColumn('[red]{task.fields[failures]} failed'),
        TimeElapsedColumn(),
        console=STDERR_CONSOLE,
        disable=not STDERR_CONSOLE.is_terminal,
    )
    atexit.register(SWEEP_PROGRESS.stop)
    HAVE_RICH = True

GROUP_DEPTH = 0
CURRENT_TASK: 'TaskID | None' = None


@contextmanager
def sweep_group():
    """Indent the bars opened inside the context and drop them once finished."""
    global GROUP_DEPTH
    GROUP_DEPTH += 1
    try:
        yield
    finally:
        clear_finished()
        GROUP_DEPTH -= 1


def _tracked(iterable: Iterable, task_id: 'TaskID') -> Iterator:
    global CURRENT_TASK
    for item in iterable:
        CURRENT_TASK = task_id
        yield item
        SWEEP_PROGRESS.advance(task_id)
    CURRENT_TASK = None


def progress_bar(iterable: Iterable, description: str = None, total: int = None) -> Iterable:
    """Iterate with a bar on standard error; plain iteration without rich."""
    if not HAVE_RICH:
        return iterable
    SWEEP_PROGRESS.start()
    if total is None:
        try:
            total = len(iterable)
        except TypeError:
            pass
    description = '| ' * GROUP_DEPTH + (description or 'Sampling')
    task_id = SWEEP_PROGRESS.add_task(description, total=total, failures=0)
    return _tracked(iterable, task_id)


def mark_failure():
    """Count a failing sample on the bar currently being iterated."""
    if not HAVE_RICH or CURRENT_TASK is None:
        return
    for task in SWEEP_PROGRESS.tasks:
        if task.id == CURRENT_TASK:
            SWEEP_PROGRESS.update(task.id, failures=task.fields['failures'] + 1)


def clear_finished():
    """Remove completed bars from the display."""
    if not HAVE_RICH:
        return
    for task in SWEEP_PROGRESS.tasks:
        if task.finished or task.total is None:
            SWEEP_PROGRESS.remove_task(task.id)
