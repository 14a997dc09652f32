# modules/codec/codec_transform.py
"""
8x8 DCT, quantization and zigzag ordering
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.fft import dctn, idctn

from modules.shared.errors import CodecError

BLOCK = 8
MIN_QP = 1
MAX_QP = 31
MAX_LEVEL = 2047


def _zigzag_order() -> np.ndarray:
    cells = sorted(
        ((row, col) for row in range(BLOCK) for col in range(BLOCK)),
        key=lambda rc: (rc[0] + rc[1], rc[0] if (rc[0] + rc[1]) % 2 else rc[1])
    )
    return np.array([row * BLOCK + col for row, col in cells], dtype=np.intp)


# ZIGZAG[k] = raster index of the k-th coefficient in scan order
ZIGZAG = _zigzag_order()


@dataclass(frozen=True)
class QuantBlock:
    """64 quantized levels in zigzag order"""
    levels: Tuple[int, ...]
    origin: Tuple[int, int] = (0, 0)


def round_half_away(values) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def check_qp(qp: int) -> None:
    if not MIN_QP <= int(qp) <= MAX_QP:
        raise CodecError(f"qp {qp} outside {MIN_QP}..{MAX_QP}")


def dct8x8_forward(pixels) -> np.ndarray:
    """Orthonormal 2-D DCT-II of (pixel - 128)"""
    block = np.asarray(pixels, dtype=np.float64).reshape(BLOCK, BLOCK)
    return dctn(block - 128.0, type=2, norm='ortho')


def dct8x8_inverse(coeffs) -> np.ndarray:
    """Inverse DCT, +128, round half away from zero, clamp to 0..255"""
    samples = idctn(np.asarray(coeffs, dtype=np.float64).reshape(BLOCK, BLOCK), type=2, norm='ortho')
    return np.clip(round_half_away(samples + 128.0), 0, 255).astype(np.uint8)


def residual_forward(residual) -> np.ndarray:
    return dctn(np.asarray(residual, dtype=np.float64).reshape(BLOCK, BLOCK), type=2, norm='ortho')


def residual_inverse(coeffs) -> np.ndarray:
    samples = idctn(np.asarray(coeffs, dtype=np.float64).reshape(BLOCK, BLOCK), type=2, norm='ortho')
    return round_half_away(samples).astype(np.int32)


def quantize_block(coeffs, qp: int, origin: Tuple[int, int] = (0, 0)) -> QuantBlock:
    """level = round(coeff / 2qp) half away from zero, returned in zigzag order"""
    check_qp(qp)
    raster = round_half_away(np.asarray(coeffs, dtype=np.float64).reshape(-1) / (2 * qp))
    if np.abs(raster).max(initial=0) > MAX_LEVEL:
        raise CodecError(f"level overflow at qp {qp}: quantized level exceeds 12 signed bits")
    return QuantBlock(tuple(int(v) for v in raster[ZIGZAG]), origin)


def dequantize_block(block: QuantBlock, qp: int) -> np.ndarray:
    check_qp(qp)
    raster = np.zeros(BLOCK * BLOCK, dtype=np.float64)
    raster[ZIGZAG] = np.asarray(block.levels, dtype=np.float64) * (2 * qp)
    return raster.reshape(BLOCK, BLOCK)
