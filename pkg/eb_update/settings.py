"""
Settings for the eb_update package.

Values are read once from the environment at import time:

- ``EB_VERTEX_CAP``: maximum number of extension vertices enumerated (default 1000000)
- ``EB_MAX_CONSISTENCY_ATOMS``: maximum number of coarse atoms for the
  extension-consistency scan (default 12)
- ``EB_LOG_LEVEL``: level of the console log handler (default INFO)
"""
import logging
import logging.config
import os

logger = logging.getLogger('eb_update')


def _int_from_env(name: str, default: int) -> int:
    value = os.environ.get(name, default)
    try:
        value = int(value)
    except ValueError:
        logger.error(f'{name} environment variable is not an integer: {value}. Defaulting to {default}.')
        return default
    if value < 1:
        logger.error(f'{name} environment variable must be positive: {value}. Defaulting to {default}.')
        return default
    return value


VERTEX_CAP = _int_from_env('EB_VERTEX_CAP', 10**6)
MAX_CONSISTENCY_ATOMS = _int_from_env('EB_MAX_CONSISTENCY_ATOMS', 12)
LOG_LEVEL = os.environ.get('EB_LOG_LEVEL', 'INFO').upper()

stream_handler = 'logging.StreamHandler'
stream_handler_kwargs = {'stream': 'ext://sys.stderr'}
fmt_str = '{asctime} - {levelname:>7s} - {name:>15s}:{module:<15s} - {message}'
try:
    from rich.console import Console
    from rich.logging import RichHandler  # pylint: disable=unused-import
except ImportError:
    STDERR_CONSOLE = None
else:
    STDERR_CONSOLE = Console(stderr=True)
    stream_handler = 'rich.logging.RichHandler'
    stream_handler_kwargs = {
        'console': 'ext://eb_update.settings.STDERR_CONSOLE',
        'rich_tracebacks': True,
        'tracebacks_suppress': ['click'],
    }
    fmt_str = '{message}'


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'medium': {
            'format': fmt_str,
            'style': '{',
            },
    },
    'handlers': {
        'console': {
            'level': LOG_LEVEL,
            'class': stream_handler,
            'formatter': 'medium',
            **stream_handler_kwargs,
        },
    },
    'loggers': {
        'eb_update': {
            'handlers': ['console'],
            'level': 'DEBUG',
            'propagate': False,
        },
    },
}


def configure_logging(level: str = None):
    """Apply LOGGING, optionally overriding the console level."""
    config = LOGGING
    if level is not None:
        config = {**LOGGING, 'handlers': {'console': {**LOGGING['handlers']['console'], 'level': level.upper()}}}
    logging.config.dictConfig(config)
