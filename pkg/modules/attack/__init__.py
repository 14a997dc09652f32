"""
Attack Module Package

This package contains the known-plaintext attacks:
- Permutation classes and recovery from known pairs (attack_kpa)
- End-to-end attack runs and reports (attack_runner)
"""

from .attack_kpa import (
    PermutationClasses, kpa_byte_permutation, refine_all, apply_recovered,
    block_levels, kpa_coefficient_permutation
)
from .attack_runner import align_by_audio, run_byte_kpa, run_coefficient_kpa, DEFAULT_KEYSPACE_BITS

__all__ = [
    'PermutationClasses', 'kpa_byte_permutation', 'refine_all', 'apply_recovered',
    'block_levels', 'kpa_coefficient_permutation',
    'align_by_audio', 'run_byte_kpa', 'run_coefficient_kpa', 'DEFAULT_KEYSPACE_BITS'
]
