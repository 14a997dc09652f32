# modules/schemes/scheme_types.py
"""
Scheme parameters, reports and per-frame helpers shared by all schemes
"""

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable, Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from components.stage_timing import STAGE_LABELS
from modules.codec.codec_syntax import ALL_CLASSES, CodewordClass
from modules.keys.keys_stream import keyed_stream
from modules.shared.errors import SchemeError
from .scheme_config import PERCEPTUAL_CATEGORIES, SCHEMES

# class mask, category mask, choose fraction, perceptual fraction (both in 1/10000)
PARAMS_STRUCT = struct.Struct('<BBHH')
FRACTION_SCALE = 10000
CLASS_ORDER = tuple(CodewordClass)


@dataclass(frozen=True)
class SchemeParams:
    scheme: str = 'proposed'
    classes: FrozenSet[CodewordClass] = ALL_CLASSES
    fraction: float = 0.5
    perceptual_fraction: float = 1.0
    categories: Tuple[int, ...] = (1, 2, 3)

    def validate(self) -> 'SchemeParams':
        """Check ranges and snap fractions to the stored resolution"""
        if self.scheme not in SCHEMES:
            raise SchemeError(f"unknown scheme '{self.scheme}'")
        if not 0.0 < self.fraction <= 1.0:
            raise SchemeError(f"frame fraction {self.fraction} outside (0, 1]")
        if not 0.0 <= self.perceptual_fraction <= 1.0:
            raise SchemeError(f"perceptual fraction {self.perceptual_fraction} outside [0, 1]")
        unknown = set(self.categories) - set(PERCEPTUAL_CATEGORIES)
        if unknown:
            raise SchemeError(f"unknown perceptual categories {sorted(unknown)}")
        fraction = max(1, round(self.fraction * FRACTION_SCALE)) / FRACTION_SCALE
        perceptual = round(self.perceptual_fraction * FRACTION_SCALE) / FRACTION_SCALE
        return replace(self, classes=frozenset(self.classes), fraction=fraction,
                       perceptual_fraction=perceptual, categories=tuple(sorted(set(self.categories))))

    def to_bytes(self) -> bytes:
        class_mask = sum(1 << CLASS_ORDER.index(cls) for cls in self.classes)
        category_mask = sum(1 << (category - 1) for category in self.categories)
        return PARAMS_STRUCT.pack(class_mask, category_mask,
                                  round(self.fraction * FRACTION_SCALE),
                                  round(self.perceptual_fraction * FRACTION_SCALE))

    @classmethod
    def from_bytes(cls, scheme: str, data: bytes) -> 'SchemeParams':
        class_mask, category_mask, fraction, perceptual = PARAMS_STRUCT.unpack(data)
        return cls(
            scheme=scheme,
            classes=frozenset(c for index, c in enumerate(CLASS_ORDER) if class_mask >> index & 1),
            fraction=fraction / FRACTION_SCALE,
            perceptual_fraction=perceptual / FRACTION_SCALE,
            categories=tuple(category for category in PERCEPTUAL_CATEGORIES if category_mask >> (category - 1) & 1)
        )

    def perceptual_classes(self) -> FrozenSet[CodewordClass]:
        return frozenset(CodewordClass(name) for category in self.categories
                         for name in PERCEPTUAL_CATEGORIES[category])


@dataclass
class SchemeReport:
    scheme: str
    frames: int = 0
    bytes_touched: int = 0
    total_payload_bytes: int = 0
    aes_bits: int = 0
    original_file_bytes: int = 0
    encrypted_file_bytes: int = 0
    stage_timings: Dict[str, float] = field(default_factory=lambda: {stage: 0.0 for stage in STAGE_LABELS})

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class FrameOutcome:
    """What one scheme did to the payloads of a file"""
    records: list
    bytes_touched: int = 0
    aes_bits: int = 0


def map_frames(function: Callable, items: Sequence, workers: int = 1) -> List:
    """Apply function to every item, in order, optionally on a thread pool"""
    if workers <= 1 or len(items) < 2:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(function, items))


def xor_bits_at(payload: bytes, positions: np.ndarray, seed: bytes, tag: bytes) -> bytes:
    """XOR the bits at positions with a keystream; other bits untouched"""
    if positions.size == 0:
        return bytes(payload)
    stream = keyed_stream(seed, tag, (positions.size + 7) // 8)
    keystream_bits = np.unpackbits(np.frombuffer(stream, dtype=np.uint8))[:positions.size]
    all_bits = np.unpackbits(np.frombuffer(bytes(payload), dtype=np.uint8))
    all_bits[positions] ^= keystream_bits
    return np.packbits(all_bits).tobytes()


def xor_bytes(data: bytes, seed: bytes, tag: bytes) -> bytes:
    stream = keyed_stream(seed, tag, len(data))
    if not data:
        return b''
    return (np.frombuffer(data, dtype=np.uint8) ^ np.frombuffer(stream, dtype=np.uint8)).tobytes()


def touched_bytes(positions: np.ndarray) -> int:
    """Number of distinct bytes containing at least one of the bit positions"""
    if positions.size == 0:
        return 0
    return int(np.unique(positions // 8).size)


def selected_frames(frame_count: int, fraction: float) -> List[int]:
    """Frames 0, s, 2s, ... with s = floor(1/f), truncated to ceil(f*N)"""
    if frame_count == 0:
        return []
    step = max(1, math.floor(1.0 / fraction + 1e-9))
    wanted = math.ceil(fraction * frame_count - 1e-9)
    return list(range(0, frame_count, step))[:wanted]


def unit_limit(unit_total: int, fraction: float) -> int:
    return math.ceil(fraction * unit_total - 1e-9)
