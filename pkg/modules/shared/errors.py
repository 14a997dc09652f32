# modules/shared/errors.py
"""
Exception hierarchy shared by every svcrypt module

Each error carries the process exit code the command line maps it to.
"""


class SvcryptError(Exception):
    """Base class for all svcrypt errors"""
    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class UsageError(SvcryptError):
    """Bad flags, missing key, conflicting paths"""
    exit_code = 1


class FormatError(SvcryptError):
    """Container or input media could not be parsed"""
    exit_code = 2


class BitstreamError(FormatError):
    """Frame payload syntax violation"""


class CodecError(SvcryptError):
    """Codec parameters out of range for the input"""
    exit_code = 2


class SchemeError(SvcryptError):
    """Scheme cannot be applied to this file or with these parameters"""
    exit_code = 2


class AttackError(SvcryptError):
    """Attack precondition not met"""
    exit_code = 2


class WrongKeyError(SvcryptError):
    """Key blob failed authentication"""
    exit_code = 3

    def __init__(self, message: str = "wrong key or corrupted blob"):
        super().__init__(message)
