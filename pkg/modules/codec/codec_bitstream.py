# modules/codec/codec_bitstream.py
"""
Bit-level writer and reader with unsigned Exp-Golomb codes

ue(v): k zeros, a '1', then the k low bits of (v + 1), where k = floor(log2(v + 1)).
The k trailing bits are the fixed-length suffix.
"""

from typing import List, Tuple

import numpy as np

from modules.shared.errors import BitstreamError

# No syntax element in a frame needs more than 11 suffix bits
MAX_PREFIX = 16


class BitWriter:
    """Accumulates bits MSB-first"""

    def __init__(self):
        self.bits: List[int] = []

    @property
    def position(self) -> int:
        return len(self.bits)

    def write_bit(self, bit: int) -> None:
        self.bits.append(1 if bit else 0)

    def write_bits(self, value: int, width: int) -> None:
        for shift in range(width - 1, -1, -1):
            self.bits.append((value >> shift) & 1)

    def write_ue(self, value: int) -> Tuple[int, int]:
        """Write ue(value); returns (suffix bit offset, suffix width)"""
        if value < 0:
            raise ValueError(f"ue() of negative value {value}")
        code = value + 1
        suffix_width = code.bit_length() - 1
        self.bits.extend([0] * suffix_width)
        self.bits.append(1)
        offset = self.position
        self.write_bits(code, suffix_width)
        return offset, suffix_width

    def align(self) -> None:
        while len(self.bits) % 8:
            self.bits.append(0)

    def to_bytes(self) -> bytes:
        self.align()
        return np.packbits(np.array(self.bits, dtype=np.uint8)).tobytes()


class BitReader:
    """Reads bits MSB-first; every overrun raises BitstreamError"""

    def __init__(self, data: bytes, start_bit: int = 0):
        self.bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)).tolist()
        self.length = len(self.bits)
        self.position = start_bit

    @property
    def remaining(self) -> int:
        return self.length - self.position

    def read_bit(self) -> int:
        if self.position >= self.length:
            raise BitstreamError("truncated stream")
        bit = self.bits[self.position]
        self.position += 1
        return bit

    def read_bits(self, width: int) -> int:
        if self.position + width > self.length:
            raise BitstreamError("truncated stream")
        value = 0
        for bit in self.bits[self.position:self.position + width]:
            value = (value << 1) | bit
        self.position += width
        return value

    def read_ue(self) -> Tuple[int, int, int]:
        """Read ue(); returns (value, suffix bit offset, suffix width)"""
        zeros = 0
        while self.read_bit() == 0:
            zeros += 1
            if zeros > MAX_PREFIX:
                raise BitstreamError("invalid Exp-Golomb prefix overrun")
        offset = self.position
        suffix = self.read_bits(zeros)
        return (1 << zeros) + suffix - 1, offset, zeros

    def align(self) -> List[int]:
        """Skip to the next byte boundary; returns the skipped padding bits"""
        pad = (-self.position) % 8
        if self.position + pad > self.length:
            raise BitstreamError("truncated stream")
        padding = self.bits[self.position:self.position + pad]
        self.position += pad
        return padding
