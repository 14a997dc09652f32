"""
Schemes Module Package

This package contains the encryption schemes behind one interface:
- Scheme registry with taxonomy and codec requirements (scheme_config)
- Parameters, reports and per-frame helpers (scheme_types)
- Proposed frame shuffle + macroblock jumbling + selective AES (scheme_proposed)
- Full AES, pure scrambling, choose-and-encrypt (scheme_baseline)
- Crisscross coefficient permutation (scheme_crisscross)
- Perceptual codeword-bit encryption (scheme_perceptual)
- Dispatch, key blob handling and reports (scheme_coordinator)
"""

from .scheme_config import (
    SCHEMES, PERCEPTUAL_CATEGORIES, get_scheme_by_name, get_scheme_by_id,
    get_all_scheme_names, get_comparison_scheme_names, resolve_scheme, validate_configuration
)
from .scheme_types import SchemeParams, SchemeReport, selected_frames
from .scheme_proposed import frame_positions
from .scheme_crisscross import coefficient_permutation, permute_levels
from .scheme_coordinator import SchemeCoordinator, SCHEME_HANDLERS, encrypt, decrypt, classify

__all__ = [
    'SCHEMES', 'PERCEPTUAL_CATEGORIES', 'get_scheme_by_name', 'get_scheme_by_id',
    'get_all_scheme_names', 'get_comparison_scheme_names', 'resolve_scheme', 'validate_configuration',
    'SchemeParams', 'SchemeReport', 'selected_frames',
    'frame_positions', 'coefficient_permutation', 'permute_levels',
    'SchemeCoordinator', 'SCHEME_HANDLERS', 'encrypt', 'decrypt', 'classify'
]
