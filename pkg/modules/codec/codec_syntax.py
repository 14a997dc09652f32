# modules/codec/codec_syntax.py
"""
Frame payload syntax

Payload = 2-byte header (frame type, qp) followed by one byte-aligned unit per
16x16 macroblock, in stream order. Per unit: mode bit (0=I, 1=P), for P the
motion vector as two signed values (dx, dy), then four 8x8 blocks.

Per block: DC as ue(|dc|) plus a sign bit when non-zero, then (run, level)
pairs as ue(run + 1), ue(|level| - 1), sign bit, closed by ue(0).

Parsing also yields the CodewordMap: every Exp-Golomb suffix and sign bit of a
DC, AC level or motion vector component, tagged with its class. Those bits can
be rewritten freely without moving any codeword boundary.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from modules.shared.errors import BitstreamError, CodecError
from .codec_bitstream import BitReader, BitWriter
from .codec_transform import MAX_LEVEL, MAX_QP, MIN_QP

logger = logging.getLogger(__name__)

FRAME_HEADER_BYTES = 2
MB_SIZE = 16
BLOCKS_PER_UNIT = 4
COEFFS_PER_BLOCK = 64
FRAME_TYPE_CODES = {'I': 0, 'P': 1}
FRAME_TYPE_NAMES = {code: name for name, code in FRAME_TYPE_CODES.items()}

# ============================================================================
# CODEWORD CLASSES
# ============================================================================

class CodewordClass(str, Enum):
    INTRA_DC_SUFFIX = 'INTRA_DC_SUFFIX'
    INTER_DC_SUFFIX = 'INTER_DC_SUFFIX'
    AC_LEVEL_SUFFIX = 'AC_LEVEL_SUFFIX'
    MVD_SUFFIX = 'MVD_SUFFIX'
    SIGN_INTRA_DC = 'SIGN_INTRA_DC'
    SIGN_INTER_DC = 'SIGN_INTER_DC'
    SIGN_AC = 'SIGN_AC'
    SIGN_MVD = 'SIGN_MVD'


ALL_CLASSES: FrozenSet[CodewordClass] = frozenset(CodewordClass)

CLASS_GROUPS: Dict[str, FrozenSet[CodewordClass]] = {
    'dc': frozenset({CodewordClass.INTRA_DC_SUFFIX, CodewordClass.SIGN_INTRA_DC,
                     CodewordClass.INTER_DC_SUFFIX, CodewordClass.SIGN_INTER_DC}),
    'ac': frozenset({CodewordClass.AC_LEVEL_SUFFIX, CodewordClass.SIGN_AC}),
    'mvd': frozenset({CodewordClass.MVD_SUFFIX, CodewordClass.SIGN_MVD}),
    'signs': frozenset({CodewordClass.SIGN_INTRA_DC, CodewordClass.SIGN_INTER_DC,
                        CodewordClass.SIGN_AC, CodewordClass.SIGN_MVD})
}


def parse_class_groups(text: str) -> FrozenSet[CodewordClass]:
    """'dc,ac' -> union of the named groups; 'all' selects every class"""
    selected = set()
    for name in (part.strip().lower() for part in text.split(',')):
        if not name:
            continue
        if name == 'all':
            selected |= ALL_CLASSES
        elif name in CLASS_GROUPS:
            selected |= CLASS_GROUPS[name]
        else:
            raise ValueError(f"unknown codeword class group '{name}'")
    return frozenset(selected)


@dataclass(frozen=True)
class CodewordSpan:
    bit_offset: int
    bit_width: int
    cls: CodewordClass
    unit_index: int


@dataclass(frozen=True)
class CodewordMap:
    """Sorted, disjoint encryptable bit spans of one payload"""
    spans: Tuple[CodewordSpan, ...]
    payload_bits: int = 0

    @property
    def total_encryptable_bits(self) -> int:
        return sum(span.bit_width for span in self.spans)

    def select(self, classes: Iterable[CodewordClass], unit_limit: Optional[int] = None) -> List[CodewordSpan]:
        wanted = frozenset(classes)
        return [span for span in self.spans
                if span.cls in wanted and (unit_limit is None or span.unit_index < unit_limit)]

    def bit_positions(self, classes: Iterable[CodewordClass], unit_limit: Optional[int] = None) -> np.ndarray:
        selected = self.select(classes, unit_limit)
        if not selected:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([np.arange(span.bit_offset, span.bit_offset + span.bit_width, dtype=np.int64)
                               for span in selected])

    def class_bit_counts(self) -> Dict[str, int]:
        counts = {cls.value: 0 for cls in CodewordClass}
        for span in self.spans:
            counts[span.cls.value] += span.bit_width
        return counts

# ============================================================================
# SYNTAX TREE
# ============================================================================

@dataclass(frozen=True)
class MacroblockUnit:
    """One coded macroblock; bit_length and payload are filled in by the parser"""
    mb_index: int
    mode: str
    mvd: Tuple[int, int]
    blocks: Tuple[Tuple[int, ...], ...]
    bit_length: int = 0
    payload: bytes = b''


@dataclass(frozen=True)
class EncodedFrame:
    frame_type: str
    qp: int
    units: Tuple[MacroblockUnit, ...]
    positions: Tuple[int, ...] = field(default_factory=tuple)


def unit_count(width: int, height: int) -> int:
    if width < MB_SIZE or height < MB_SIZE or width % MB_SIZE or height % MB_SIZE:
        raise CodecError(f"dimension violation: {width}x{height} is not a multiple of 16")
    return (width // MB_SIZE) * (height // MB_SIZE)


def macroblock_origins(width: int, height: int) -> List[Tuple[int, int]]:
    """(x, y) of every macroblock in raster order"""
    unit_count(width, height)
    return [(x, y) for y in range(0, height, MB_SIZE) for x in range(0, width, MB_SIZE)]

# ============================================================================
# WRITER
# ============================================================================

def _write_signed(writer: BitWriter, value: int, suffix_cls: CodewordClass, sign_cls: CodewordClass,
                  unit_index: int, spans: List[CodewordSpan], magnitude_bias: int = 0) -> None:
    offset, width = writer.write_ue(abs(value) - magnitude_bias)
    if width:
        spans.append(CodewordSpan(offset, width, suffix_cls, unit_index))
    if value != 0:
        spans.append(CodewordSpan(writer.position, 1, sign_cls, unit_index))
        writer.write_bit(1 if value < 0 else 0)


def _write_block(writer: BitWriter, levels: Sequence[int], intra: bool,
                 unit_index: int, spans: List[CodewordSpan]) -> None:
    if len(levels) != COEFFS_PER_BLOCK:
        raise CodecError(f"block has {len(levels)} levels, expected {COEFFS_PER_BLOCK}")
    if max(abs(level) for level in levels) > MAX_LEVEL:
        raise CodecError("level overflow: exceeds 12 signed bits")

    if intra:
        _write_signed(writer, levels[0], CodewordClass.INTRA_DC_SUFFIX, CodewordClass.SIGN_INTRA_DC,
                      unit_index, spans)
    else:
        _write_signed(writer, levels[0], CodewordClass.INTER_DC_SUFFIX, CodewordClass.SIGN_INTER_DC,
                      unit_index, spans)

    run = 0
    for level in levels[1:]:
        if level == 0:
            run += 1
            continue
        writer.write_ue(run + 1)
        _write_signed(writer, level, CodewordClass.AC_LEVEL_SUFFIX, CodewordClass.SIGN_AC,
                      unit_index, spans, magnitude_bias=1)
        run = 0
    writer.write_ue(0)


def write_frame(frame: EncodedFrame) -> Tuple[bytes, CodewordMap]:
    """Serialize a syntax tree; returns (payload, CodewordMap)"""
    if frame.frame_type not in FRAME_TYPE_CODES:
        raise CodecError(f"invalid frame type {frame.frame_type}")
    if not MIN_QP <= frame.qp <= MAX_QP:
        raise CodecError(f"qp {frame.qp} outside {MIN_QP}..{MAX_QP}")

    writer = BitWriter()
    writer.write_bits(FRAME_TYPE_CODES[frame.frame_type], 8)
    writer.write_bits(frame.qp, 8)
    spans: List[CodewordSpan] = []

    for unit_index, unit in enumerate(frame.units):
        if unit.mode == 'P' and frame.frame_type == 'I':
            raise CodecError("P-mode unit inside an I-frame")
        if len(unit.blocks) != BLOCKS_PER_UNIT:
            raise CodecError(f"unit {unit_index} has {len(unit.blocks)} blocks")
        intra = unit.mode == 'I'
        writer.write_bit(0 if intra else 1)
        if not intra:
            for component in unit.mvd:
                _write_signed(writer, component, CodewordClass.MVD_SUFFIX, CodewordClass.SIGN_MVD,
                              unit_index, spans)
        for levels in unit.blocks:
            _write_block(writer, levels, intra, unit_index, spans)
        writer.align()

    payload = writer.to_bytes()
    return payload, CodewordMap(tuple(spans), len(payload) * 8)


def write_frame_syntax(frame: EncodedFrame) -> bytes:
    return write_frame(frame)[0]

# ============================================================================
# PARSER
# ============================================================================

def _read_signed(reader: BitReader, suffix_cls: CodewordClass, sign_cls: CodewordClass,
                 unit_index: int, spans: List[CodewordSpan], magnitude_bias: int = 0) -> int:
    magnitude, offset, width = reader.read_ue()
    magnitude += magnitude_bias
    if width:
        spans.append(CodewordSpan(offset, width, suffix_cls, unit_index))
    if magnitude == 0:
        return 0
    spans.append(CodewordSpan(reader.position, 1, sign_cls, unit_index))
    return -magnitude if reader.read_bit() else magnitude


def _read_block(reader: BitReader, intra: bool, unit_index: int,
                spans: List[CodewordSpan]) -> Tuple[int, ...]:
    levels = [0] * COEFFS_PER_BLOCK
    if intra:
        dc = _read_signed(reader, CodewordClass.INTRA_DC_SUFFIX, CodewordClass.SIGN_INTRA_DC, unit_index, spans)
    else:
        dc = _read_signed(reader, CodewordClass.INTER_DC_SUFFIX, CodewordClass.SIGN_INTER_DC, unit_index, spans)
    if abs(dc) > MAX_LEVEL:
        raise BitstreamError("level overflow")
    levels[0] = dc

    position = 1
    while True:
        code, _, _ = reader.read_ue()
        if code == 0:
            break
        position += code - 1
        if position >= COEFFS_PER_BLOCK:
            raise BitstreamError("run past end of block")
        level = _read_signed(reader, CodewordClass.AC_LEVEL_SUFFIX, CodewordClass.SIGN_AC,
                             unit_index, spans, magnitude_bias=1)
        if abs(level) > MAX_LEVEL:
            raise BitstreamError("level overflow")
        levels[position] = level
        position += 1
    return tuple(levels)


def parse_frame(payload: bytes, width: int, height: int) -> Tuple[EncodedFrame, CodewordMap]:
    """
    Parse a payload into its syntax tree and CodewordMap

    Total over arbitrary bytes: any violation raises BitstreamError.
    """
    try:
        expected_units = unit_count(width, height)
    except CodecError as e:
        raise BitstreamError(e.message) from e

    payload = bytes(payload)
    if len(payload) < FRAME_HEADER_BYTES:
        raise BitstreamError("truncated stream: missing frame header")
    type_code, qp = payload[0], payload[1]
    if type_code not in FRAME_TYPE_NAMES:
        raise BitstreamError(f"invalid frame type {type_code}")
    if not MIN_QP <= qp <= MAX_QP:
        raise BitstreamError(f"invalid qp {qp}")
    frame_type = FRAME_TYPE_NAMES[type_code]

    reader = BitReader(payload, start_bit=FRAME_HEADER_BYTES * 8)
    spans: List[CodewordSpan] = []
    units: List[MacroblockUnit] = []

    for unit_index in range(expected_units):
        if reader.remaining == 0:
            raise BitstreamError(f"unit count mismatch: stream ends after {unit_index} units")
        start = reader.position
        intra = reader.read_bit() == 0
        if not intra and frame_type == 'I':
            raise BitstreamError(f"P-mode unit {unit_index} inside an I-frame")

        mvd = (0, 0)
        if not intra:
            dx = _read_signed(reader, CodewordClass.MVD_SUFFIX, CodewordClass.SIGN_MVD, unit_index, spans)
            dy = _read_signed(reader, CodewordClass.MVD_SUFFIX, CodewordClass.SIGN_MVD, unit_index, spans)
            mvd = (dx, dy)
        blocks = tuple(_read_block(reader, intra, unit_index, spans) for _ in range(BLOCKS_PER_UNIT))
        bit_length = reader.position - start
        if any(reader.align()):
            raise BitstreamError(f"non-zero padding after unit {unit_index}")

        units.append(MacroblockUnit(
            mb_index=unit_index,
            mode='I' if intra else 'P',
            mvd=mvd,
            blocks=blocks,
            bit_length=bit_length,
            payload=payload[start // 8:reader.position // 8]
        ))

    if reader.remaining:
        raise BitstreamError("unit count mismatch: trailing data after last unit")

    frame = EncodedFrame(frame_type, qp, tuple(units), tuple(range(expected_units)))
    return frame, CodewordMap(tuple(spans), len(payload) * 8)


def parse_frame_syntax(payload: bytes, width: int, height: int) -> EncodedFrame:
    return parse_frame(payload, width, height)[0]


def codeword_map(payload: bytes, width: int, height: int) -> CodewordMap:
    return parse_frame(payload, width, height)[1]

# ============================================================================
# UNIT ACCESS AND BIT REWRITING
# ============================================================================

def split_units(payload: bytes, width: int, height: int) -> Tuple[bytes, List[bytes]]:
    """(2-byte header, byte string of every unit in stream order)"""
    frame, _ = parse_frame(payload, width, height)
    return bytes(payload[:FRAME_HEADER_BYTES]), [unit.payload for unit in frame.units]


def join_units(header: bytes, units: Sequence[bytes]) -> bytes:
    return bytes(header) + b''.join(units)


def extract_sensitive_bits(payload: bytes, classes: Iterable[CodewordClass], width: int, height: int,
                           unit_limit: Optional[int] = None) -> np.ndarray:
    """Bits of the selected spans, concatenated in span order"""
    _, cmap = parse_frame(payload, width, height)
    positions = cmap.bit_positions(classes, unit_limit)
    bits = np.unpackbits(np.frombuffer(bytes(payload), dtype=np.uint8))
    return bits[positions]


def patch_sensitive_bits(payload: bytes, classes: Iterable[CodewordClass], bits, width: int, height: int,
                         unit_limit: Optional[int] = None) -> bytes:
    """Write bits back into the selected spans; payload length is unchanged"""
    _, cmap = parse_frame(payload, width, height)
    positions = cmap.bit_positions(classes, unit_limit)
    return patch_bits_at(payload, positions, bits)


def patch_bits_at(payload: bytes, positions: np.ndarray, bits) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
    if bits.size != positions.size:
        raise CodecError(f"bit-length mismatch: {bits.size} bits for {positions.size} positions")
    all_bits = np.unpackbits(np.frombuffer(bytes(payload), dtype=np.uint8))
    all_bits[positions] = bits & 1
    return np.packbits(all_bits).tobytes()
