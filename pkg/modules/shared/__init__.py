"""
Shared Module Package

This package contains pieces used across the svcrypt modules:
- Exception hierarchy with exit codes (errors)
- Logging setup for the command line (logging_setup)
"""

from .errors import (
    SvcryptError, UsageError, FormatError, BitstreamError, CodecError,
    SchemeError, AttackError, WrongKeyError
)
from .logging_setup import configure_logging

__all__ = [
    'SvcryptError', 'UsageError', 'FormatError', 'BitstreamError', 'CodecError',
    'SchemeError', 'AttackError', 'WrongKeyError',
    'configure_logging'
]
