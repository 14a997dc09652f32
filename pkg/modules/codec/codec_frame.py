# modules/codec/codec_frame.py
"""
Frame encoder and decoder

I-frames code every macroblock intra. P-frames code every macroblock as a
motion-compensated residual against the previous reconstruction, with a zero
motion vector predictor so each unit stays independently decodable.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from modules.shared.errors import BitstreamError, CodecError
from .codec_motion import DEFAULT_WINDOW, motion_compensate, motion_search
from .codec_syntax import (
    CodewordMap, EncodedFrame, MacroblockUnit, macroblock_origins, parse_frame, write_frame
)
from .codec_transform import (
    QuantBlock, check_qp, dct8x8_forward, dct8x8_inverse, dequantize_block,
    quantize_block, residual_forward, residual_inverse
)

logger = logging.getLogger(__name__)

# (row, col) of the four 8x8 blocks inside a macroblock
BLOCK_OFFSETS = ((0, 0), (0, 8), (8, 0), (8, 8))
GRAY_LEVEL = 128


def _as_plane(frame, width: Optional[int] = None, height: Optional[int] = None) -> np.ndarray:
    plane = np.asarray(frame, dtype=np.uint8)
    if plane.ndim == 1 and width and height:
        plane = plane.reshape(height, width)
    if plane.ndim != 2:
        raise CodecError("frame must be a 2-D luma plane")
    return plane


def encode_frame(raw_frame, reference: Optional[np.ndarray] = None, qp: int = 4, frame_type: str = 'I',
                 window: int = DEFAULT_WINDOW) -> Tuple[bytes, CodewordMap]:
    """Encode one luma plane; returns (payload, CodewordMap)"""
    check_qp(qp)
    frame = _as_plane(raw_frame)
    height, width = frame.shape
    origins = macroblock_origins(width, height)

    if frame_type not in ('I', 'P'):
        raise CodecError(f"invalid frame type {frame_type}")
    if frame_type == 'P':
        if reference is None:
            raise CodecError("P-frame requires a reference")
        reference = _as_plane(reference)
        if reference.shape != frame.shape:
            raise CodecError("reference dimensions differ from frame")

    units: List[MacroblockUnit] = []
    for mb_index, (x, y) in enumerate(origins):
        current = frame[y:y + 16, x:x + 16]
        if frame_type == 'I':
            blocks = tuple(
                quantize_block(dct8x8_forward(current[by:by + 8, bx:bx + 8]), qp, (x + bx, y + by)).levels
                for by, bx in BLOCK_OFFSETS
            )
            units.append(MacroblockUnit(mb_index, 'I', (0, 0), blocks))
        else:
            mv = motion_search(frame, reference, (x, y), window)
            residual = current.astype(np.int32) - motion_compensate(reference, (x, y), mv)
            blocks = tuple(
                quantize_block(residual_forward(residual[by:by + 8, bx:bx + 8]), qp, (x + bx, y + by)).levels
                for by, bx in BLOCK_OFFSETS
            )
            units.append(MacroblockUnit(mb_index, 'P', mv, blocks))

    encoded = EncodedFrame(frame_type, qp, tuple(units), tuple(range(len(units))))
    return write_frame(encoded)


def reconstruct(encoded: EncodedFrame, width: int, height: int,
                reference: Optional[np.ndarray] = None) -> np.ndarray:
    """Pixels of a parsed frame; a missing reference is treated as flat gray"""
    if reference is None:
        reference = np.full((height, width), GRAY_LEVEL, dtype=np.uint8)
    elif reference.shape != (height, width):
        raise CodecError("reference dimensions differ from frame")

    output = np.empty((height, width), dtype=np.uint8)
    for unit, (x, y) in zip(encoded.units, macroblock_origins(width, height)):
        if unit.mode == 'I':
            for levels, (by, bx) in zip(unit.blocks, BLOCK_OFFSETS):
                coeffs = dequantize_block(QuantBlock(levels), encoded.qp)
                output[y + by:y + by + 8, x + bx:x + bx + 8] = dct8x8_inverse(coeffs)
        else:
            prediction = motion_compensate(reference, (x, y), unit.mvd)
            for levels, (by, bx) in zip(unit.blocks, BLOCK_OFFSETS):
                residual = residual_inverse(dequantize_block(QuantBlock(levels), encoded.qp))
                block = prediction[by:by + 8, bx:bx + 8] + residual
                output[y + by:y + by + 8, x + bx:x + bx + 8] = np.clip(block, 0, 255)
    return output


def decode_frame(payload: bytes, width: int, height: int,
                 reference: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Decode one payload

    Raises BitstreamError on any syntax violation; never anything else for
    foreign bytes. Motion reads beyond the frame are clamped.
    """
    encoded, _ = parse_frame(payload, width, height)
    if reference is not None:
        reference = _as_plane(reference, width, height)
        if reference.shape != (height, width):
            raise BitstreamError("reference dimensions differ from frame")
    return reconstruct(encoded, width, height, reference)
