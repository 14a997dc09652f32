"""
Reusable components for svcrypt pipelines
"""

from .stage_timing import StageTimer, STAGE_LABELS
from .file_operations import atomic_write_bytes, read_file_bytes, same_path

__all__ = [
    'StageTimer',
    'STAGE_LABELS',
    'atomic_write_bytes',
    'read_file_bytes',
    'same_path'
]
