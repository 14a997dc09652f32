# modules/codec/codec_motion.py
"""
Integer-pel full-search motion estimation and compensation

Reads outside the reference frame are clamped to the nearest edge pixel.
"""

from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

MB_SIZE = 16
DEFAULT_WINDOW = 7


def motion_search(current: np.ndarray, reference: np.ndarray, mb_origin: Tuple[int, int],
                  window: int = DEFAULT_WINDOW) -> Tuple[int, int]:
    """
    Best (dx, dy) for the macroblock at mb_origin

    Minimizes SAD; ties go to the smallest |dx|+|dy|, then smallest dy, then smallest dx.
    """
    x, y = mb_origin
    block = np.asarray(current, dtype=np.int32)[y:y + MB_SIZE, x:x + MB_SIZE]
    padded = np.pad(np.asarray(reference, dtype=np.int32), window, mode='edge')
    region = padded[y:y + MB_SIZE + 2 * window, x:x + MB_SIZE + 2 * window]

    # candidates[dy + window, dx + window] is the 16x16 patch displaced by (dx, dy)
    candidates = sliding_window_view(region, (MB_SIZE, MB_SIZE))
    sad = np.abs(candidates - block).sum(axis=(2, 3))

    best_key = None
    best_mv = (0, 0)
    for dy in range(-window, window + 1):
        for dx in range(-window, window + 1):
            key = (int(sad[dy + window, dx + window]), abs(dx) + abs(dy), dy, dx)
            if best_key is None or key < best_key:
                best_key = key
                best_mv = (dx, dy)
    return best_mv


def motion_compensate(reference: np.ndarray, mb_origin: Tuple[int, int], mv: Tuple[int, int]) -> np.ndarray:
    """16x16 int32 prediction at mb_origin + mv with clamped reads"""
    height, width = reference.shape
    x, y = mb_origin
    dx, dy = mv
    rows = np.clip(np.arange(y + dy, y + dy + MB_SIZE), 0, height - 1)
    cols = np.clip(np.arange(x + dx, x + dx + MB_SIZE), 0, width - 1)
    return np.asarray(reference, dtype=np.int32)[np.ix_(rows, cols)]


def block_sad(current: np.ndarray, reference: np.ndarray, mb_origin: Tuple[int, int],
              mv: Tuple[int, int]) -> int:
    x, y = mb_origin
    block = np.asarray(current, dtype=np.int32)[y:y + MB_SIZE, x:x + MB_SIZE]
    return int(np.abs(block - motion_compensate(reference, mb_origin, mv)).sum())
