"""
Batch front end: configuration, serialization, identity suite and commands.
"""
from .config import VERSION, RunConfig, load_config
from .commands import (
    COMMAND_TABLE,
    CommandResult,
    build_functional,
    build_operator,
    build_series,
    run_command,
)
from .identities import IdentitySuite, corrupted_alpha_table

__version__ = VERSION

__all__ = [
    'VERSION',
    'RunConfig',
    'load_config',
    'COMMAND_TABLE',
    'CommandResult',
    'build_functional',
    'build_operator',
    'build_series',
    'run_command',
    'IdentitySuite',
    'corrupted_alpha_table',
]
