"""
Codec Module Package

This package contains the block-DCT codec:
- 8x8 DCT, quantization and zigzag scan (codec_transform)
- Exp-Golomb bit writer and reader (codec_bitstream)
- Frame payload syntax, codeword map and unit access (codec_syntax)
- Full-search motion estimation (codec_motion)
- Frame encoder and decoder (codec_frame)
- Video driver and container conversion (codec_video)
"""

from .codec_transform import (
    ZIGZAG, MAX_LEVEL, QuantBlock, dct8x8_forward, dct8x8_inverse,
    quantize_block, dequantize_block, residual_forward, residual_inverse, round_half_away
)
from .codec_bitstream import BitReader, BitWriter
from .codec_syntax import (
    CodewordClass, CodewordSpan, CodewordMap, MacroblockUnit, EncodedFrame,
    ALL_CLASSES, CLASS_GROUPS, parse_class_groups, unit_count, macroblock_origins,
    parse_frame, write_frame, parse_frame_syntax, write_frame_syntax, codeword_map,
    split_units, join_units, extract_sensitive_bits, patch_sensitive_bits, patch_bits_at
)
from .codec_motion import motion_search, motion_compensate, block_sad
from .codec_frame import encode_frame, decode_frame, reconstruct
from .codec_video import (
    frame_types, encode_video, decode_video, decode_video_tolerant, decode_payload,
    build_svc, export_frames
)

__all__ = [
    'ZIGZAG', 'MAX_LEVEL', 'QuantBlock', 'dct8x8_forward', 'dct8x8_inverse',
    'quantize_block', 'dequantize_block', 'residual_forward', 'residual_inverse', 'round_half_away',
    'BitReader', 'BitWriter',
    'CodewordClass', 'CodewordSpan', 'CodewordMap', 'MacroblockUnit', 'EncodedFrame',
    'ALL_CLASSES', 'CLASS_GROUPS', 'parse_class_groups', 'unit_count', 'macroblock_origins',
    'parse_frame', 'write_frame', 'parse_frame_syntax', 'write_frame_syntax', 'codeword_map',
    'split_units', 'join_units', 'extract_sensitive_bits', 'patch_sensitive_bits', 'patch_bits_at',
    'motion_search', 'motion_compensate', 'block_sad',
    'encode_frame', 'decode_frame', 'reconstruct',
    'frame_types', 'encode_video', 'decode_video', 'decode_video_tolerant', 'decode_payload',
    'build_svc', 'export_frames'
]
