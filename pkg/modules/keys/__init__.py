"""
Keys Module Package

This package contains the keyed randomness used by every scheme:
- AES-CTR keystreams with domain separation (keys_stream)
- Keyed Fisher-Yates permutations (keys_permutation)
- Master key, shuffle key and AES-GCM key blobs (keys_wrap)
"""

from .keys_stream import keyed_stream, keystream_chunks, counter_block, frame_tag
from .keys_permutation import Permutation, derive_permutation, invert_permutation, identity_permutation
from .keys_wrap import (
    MasterKey, ShuffleKey, wrap_shuffle_key, unwrap_shuffle_key,
    MASTER_KEY_LENGTHS, SHUFFLE_KEY_BYTES, KEY_BLOB_BYTES
)

__all__ = [
    'keyed_stream', 'keystream_chunks', 'counter_block', 'frame_tag',
    'Permutation', 'derive_permutation', 'invert_permutation', 'identity_permutation',
    'MasterKey', 'ShuffleKey', 'wrap_shuffle_key', 'unwrap_shuffle_key',
    'MASTER_KEY_LENGTHS', 'SHUFFLE_KEY_BYTES', 'KEY_BLOB_BYTES'
]
