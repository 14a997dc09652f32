# modules/schemes/scheme_config.py - Centralized Scheme Configuration

"""
Centralized Scheme Configuration

Every encryption scheme is described here once: its container id byte, its
taxonomy class, the codecs it accepts and how it appears in comparison tables.
"""

from collections import OrderedDict
from typing import Dict, List, Optional, Union

from modules.container.svc_format import CODEC_NAMES, SCHEME_IDS


# ============================================================================
# MAIN SCHEME CONFIGURATION - ORDERED
# ============================================================================

SCHEMES = OrderedDict([
    ('proposed', {
        'scheme_id': 1,
        'display_name': 'Proposed',
        'table_label': 'PROPOSED',
        'taxonomy': 'selective',
        'codecs': ('DCT',),
        'compare_codec': 'DCT',
        'size_behaviour': 'unchanged',
        'in_comparison': True,
        'shuffles_frames': True,
        'description': 'Frame shuffle with audio, macroblock jumbling, AES on DC/AC/MVD codeword bits'
    }),
    ('full', {
        'scheme_id': 2,
        'display_name': 'Simple Permutation (full AES)',
        'table_label': 'SIMPLE',
        'taxonomy': 'completely layered',
        'codecs': ('RAW', 'DCT'),
        'compare_codec': 'RAW',
        'size_behaviour': 'unchanged',
        'in_comparison': True,
        'shuffles_frames': False,
        'description': 'AES-CTR over every video and audio payload byte'
    }),
    ('pure', {
        'scheme_id': 3,
        'display_name': 'Pure Scrambling',
        'table_label': 'PURE SCRAMBLING',
        'taxonomy': 'permutation',
        'codecs': ('RAW',),
        'compare_codec': 'RAW',
        'size_behaviour': 'unchanged',
        'in_comparison': True,
        'shuffles_frames': False,
        'description': 'One keyed byte permutation applied to every raw frame'
    }),
    ('crisscross', {
        'scheme_id': 4,
        'display_name': 'Crisscross',
        'table_label': 'CRISSCROSS',
        'taxonomy': 'permutation',
        'codecs': ('DCT',),
        'compare_codec': 'DCT',
        'size_behaviour': 'changed',
        'in_comparison': True,
        'shuffles_frames': False,
        'description': 'Keyed 64-entry permutation of every block\'s zigzag levels before entropy coding'
    }),
    ('choose', {
        'scheme_id': 5,
        'display_name': 'Choose and Encrypt',
        'table_label': 'CHOOSE & ENCRYPT',
        'taxonomy': 'selective',
        'codecs': ('RAW', 'DCT'),
        'compare_codec': 'RAW',
        'size_behaviour': 'unchanged',
        'in_comparison': True,
        'shuffles_frames': False,
        'description': 'AES-CTR over a deterministic fraction of whole frames'
    }),
    ('perceptual', {
        'scheme_id': 6,
        'display_name': 'Perceptual FLC',
        'table_label': 'PERCEPTUAL FLC',
        'taxonomy': 'perceptual',
        'codecs': ('DCT',),
        'compare_codec': 'DCT',
        'size_behaviour': 'unchanged',
        'in_comparison': False,
        'shuffles_frames': False,
        'description': 'AES on selected fixed-length codeword bits of the first macroblocks of each frame'
    })
])

# Perceptual categories: 1 intra DC, 2 AC and non-intra DC signs, 3 motion vectors
PERCEPTUAL_CATEGORIES = {
    1: ('INTRA_DC_SUFFIX', 'SIGN_INTRA_DC'),
    2: ('SIGN_AC', 'SIGN_INTER_DC'),
    3: ('MVD_SUFFIX', 'SIGN_MVD')
}

# ============================================================================
# HELPER FUNCTIONS
# ============================================================================

def get_scheme_by_name(name: str) -> Optional[Dict]:
    """Get scheme configuration by name"""
    if name in SCHEMES:
        return {**SCHEMES[name], 'name': name}
    return None

def get_scheme_by_id(scheme_id: int) -> Optional[Dict]:
    """Get scheme configuration by container id byte"""
    for name, scheme in SCHEMES.items():
        if scheme['scheme_id'] == scheme_id:
            return {**scheme, 'name': name}
    return None

def get_all_scheme_names() -> List[str]:
    """Get list of all scheme names in registry order"""
    return list(SCHEMES.keys())

def get_comparison_scheme_names() -> List[str]:
    """Schemes that appear in the comparison table"""
    return [name for name, scheme in SCHEMES.items() if scheme['in_comparison']]

def resolve_scheme(scheme: Union[str, int]) -> Dict:
    """Look a scheme up by name or id; raises KeyError if unknown"""
    found = get_scheme_by_id(scheme) if isinstance(scheme, int) else get_scheme_by_name(str(scheme))
    if found is None:
        raise KeyError(f"Unknown scheme: {scheme}")
    return found

# ============================================================================
# VALIDATION FUNCTIONS
# ============================================================================

def validate_configuration() -> Dict[str, bool]:
    """Validate the scheme registry for consistency"""
    results = {}
    
    # Check for duplicate ids
    ids = [scheme['scheme_id'] for scheme in SCHEMES.values()]
    results['unique_ids'] = len(ids) == len(set(ids))
    
    # Ids and names must match the container's scheme byte table
    results['ids_match_container'] = all(
        SCHEME_IDS.get(scheme['scheme_id']) == name for name, scheme in SCHEMES.items()
    )
    
    # Codec names must be known to the container
    known_codecs = set(CODEC_NAMES.values())
    results['known_codecs'] = all(
        set(scheme['codecs']) <= known_codecs and scheme['compare_codec'] in scheme['codecs']
        for scheme in SCHEMES.values()
    )
    
    # Check required fields
    required_fields = ['scheme_id', 'display_name', 'table_label', 'taxonomy', 'codecs',
                       'compare_codec', 'size_behaviour', 'in_comparison', 'shuffles_frames']
    results['all_required_fields'] = all(
        all(field in scheme for field in required_fields)
        for scheme in SCHEMES.values()
    )
    
    return results

# ============================================================================
# EXPORT FOR EASY IMPORTING
# ============================================================================

__all__ = [
    'SCHEMES',
    'PERCEPTUAL_CATEGORIES',
    'get_scheme_by_name',
    'get_scheme_by_id',
    'get_all_scheme_names',
    'get_comparison_scheme_names',
    'resolve_scheme',
    'validate_configuration'
]
