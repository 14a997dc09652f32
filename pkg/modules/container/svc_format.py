# modules/container/svc_format.py
"""
SVC container format

Header, frame index table and per-frame (video, audio) payload records.
All multi-byte integers are little-endian. The index table sits between the
header and the payloads so any record can be reached without decoding others.
"""

import logging
import struct
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, List, Tuple

from components.file_operations import atomic_write_bytes, read_file_bytes
from modules.shared.errors import FormatError

logger = logging.getLogger(__name__)

# ============================================================================
# FORMAT CONSTANTS
# ============================================================================

MAGIC = b'SVC1'
VERSION = 1

CODEC_RAW = 0
CODEC_DCT = 1
CODEC_NAMES = {CODEC_RAW: 'RAW', CODEC_DCT: 'DCT'}

FLAG_ENCRYPTED = 0x01

# scheme_id byte values
SCHEME_IDS = {
    0: 'none',
    1: 'proposed',
    2: 'full',
    3: 'pure',
    4: 'crisscross',
    5: 'choose',
    6: 'perceptual'
}

# magic, version, codec_id, scheme_id, flags, width, height, fps_num, fps_den,
# frame_count, sample_rate, channels, bits_per_sample, key_blob_len
HEADER_STRUCT = struct.Struct('<4sBBBBHHHHIIBBH')
# offset, video_len, audio_len
INDEX_ENTRY_STRUCT = struct.Struct('<QII')

# ============================================================================
# DATA TYPES
# ============================================================================

@dataclass(frozen=True)
class SvcHeader:
    """File-level parameters; frame_count is implied by the record list"""
    width: int
    height: int
    fps_num: int = 25
    fps_den: int = 1
    codec_id: int = CODEC_RAW
    scheme_id: int = 0
    flags: int = 0
    sample_rate: int = 0
    channels: int = 0
    bits_per_sample: int = 16
    key_blob: bytes = b''
    
    @property
    def encrypted(self) -> bool:
        return bool(self.flags & FLAG_ENCRYPTED)
    
    @property
    def codec_name(self) -> str:
        return CODEC_NAMES.get(self.codec_id, f'unknown({self.codec_id})')
    
    @property
    def scheme_name(self) -> str:
        return SCHEME_IDS.get(self.scheme_id, f'unknown({self.scheme_id})')


@dataclass(frozen=True)
class FrameRecord:
    """One frame's video payload together with the audio of its time span"""
    original_index: int
    video_payload: bytes
    audio_payload: bytes = b''


@dataclass(frozen=True)
class SvcFile:
    """A whole container held in memory"""
    header: SvcHeader
    records: Tuple[FrameRecord, ...] = field(default_factory=tuple)
    
    @property
    def frame_count(self) -> int:
        return len(self.records)
    
    @property
    def total_video_bytes(self) -> int:
        return sum(len(record.video_payload) for record in self.records)
    
    @property
    def total_audio_bytes(self) -> int:
        return sum(len(record.audio_payload) for record in self.records)
    
    def with_records(self, records: Iterable[FrameRecord]) -> 'SvcFile':
        """New file whose records are renumbered by position"""
        renumbered = tuple(
            FrameRecord(index, record.video_payload, record.audio_payload)
            for index, record in enumerate(records)
        )
        return SvcFile(self.header, renumbered)
    
    def with_header(self, **changes) -> 'SvcFile':
        return SvcFile(replace(self.header, **changes), self.records)

# ============================================================================
# VALIDATION
# ============================================================================

def validate_header(header: SvcHeader, records: Tuple[FrameRecord, ...]) -> None:
    """Check header invariants against the record list"""
    if header.codec_id not in CODEC_NAMES:
        raise FormatError(f"unknown codec_id {header.codec_id}")
    if header.scheme_id not in SCHEME_IDS:
        raise FormatError(f"unknown scheme_id {header.scheme_id}")
    if header.flags & ~FLAG_ENCRYPTED:
        raise FormatError(f"unknown flag bits 0x{header.flags:02x}")
    if header.width < 16 or header.height < 16 or header.width % 16 or header.height % 16:
        raise FormatError(f"dimensions {header.width}x{header.height} must be multiples of 16")
    if header.width > 0xFFFF or header.height > 0xFFFF:
        raise FormatError("dimensions exceed 16 bits")
    if header.fps_den < 1 or header.fps_num < 1:
        raise FormatError(f"invalid frame rate {header.fps_num}/{header.fps_den}")
    if header.channels not in (0, 1):
        raise FormatError(f"unsupported channel count {header.channels}")
    if header.bits_per_sample != 16:
        raise FormatError(f"unsupported bits_per_sample {header.bits_per_sample}")
    if header.channels == 1 and header.sample_rate <= 0:
        raise FormatError("audio present but sample_rate is zero")
    if header.channels == 0 and header.sample_rate != 0:
        raise FormatError("sample_rate set without an audio channel")
    if len(header.key_blob) > 0xFFFF:
        raise FormatError("key blob too long")
    if bool(header.key_blob) != header.encrypted:
        raise FormatError("inconsistent header: key_blob present iff encrypted flag set")
    
    for position, record in enumerate(records):
        if len(record.audio_payload) % 2:
            raise FormatError(f"frame {position}: odd audio payload length")
        if header.channels == 0 and record.audio_payload:
            raise FormatError(f"frame {position}: audio payload without an audio channel")
        if header.codec_id == CODEC_RAW and len(record.video_payload) != header.width * header.height:
            raise FormatError(f"frame {position}: RAW payload length {len(record.video_payload)} "
                              f"does not match {header.width}x{header.height}")
        if len(record.video_payload) > 0xFFFFFFFF or len(record.audio_payload) > 0xFFFFFFFF:
            raise FormatError(f"frame {position}: payload length overflow")

# ============================================================================
# SERIALIZATION
# ============================================================================

def serialize_svc(svc: SvcFile) -> bytes:
    """Serialize a container deterministically"""
    header = svc.header
    validate_header(header, svc.records)
    
    frame_count = len(svc.records)
    parts = [
        HEADER_STRUCT.pack(
            MAGIC, VERSION, header.codec_id, header.scheme_id, header.flags,
            header.width, header.height, header.fps_num, header.fps_den,
            frame_count, header.sample_rate, header.channels, header.bits_per_sample,
            len(header.key_blob)
        ),
        bytes(header.key_blob)
    ]
    
    offset = HEADER_STRUCT.size + len(header.key_blob) + INDEX_ENTRY_STRUCT.size * frame_count
    payloads = []
    for record in svc.records:
        parts.append(INDEX_ENTRY_STRUCT.pack(offset, len(record.video_payload), len(record.audio_payload)))
        payloads.append(record.video_payload)
        payloads.append(record.audio_payload)
        offset += len(record.video_payload) + len(record.audio_payload)
    
    return b''.join(parts + payloads)


def parse_svc(data: bytes) -> SvcFile:
    """
    Parse a container
    
    Total over arbitrary input: returns an SvcFile or raises FormatError.
    """
    try:
        return _parse_svc(bytes(data))
    except FormatError:
        raise
    except (struct.error, IndexError, ValueError, TypeError, OverflowError) as e:
        raise FormatError(f"malformed container: {e}") from e


def _parse_svc(data: bytes) -> SvcFile:
    if len(data) < 4 or data[:4] != MAGIC:
        raise FormatError("bad magic")
    if len(data) < HEADER_STRUCT.size:
        raise FormatError("truncated header")
    
    (_, version, codec_id, scheme_id, flags, width, height, fps_num, fps_den,
     frame_count, sample_rate, channels, bits_per_sample, key_blob_len) = HEADER_STRUCT.unpack_from(data, 0)
    
    if version != VERSION:
        raise FormatError(f"version mismatch: {version} (expected {VERSION})")
    
    cursor = HEADER_STRUCT.size
    if cursor + key_blob_len > len(data):
        raise FormatError("truncated key blob")
    key_blob = data[cursor:cursor + key_blob_len]
    cursor += key_blob_len
    
    index_end = cursor + INDEX_ENTRY_STRUCT.size * frame_count
    if index_end > len(data):
        raise FormatError("truncated index table")
    
    header = SvcHeader(
        width=width, height=height, fps_num=fps_num, fps_den=fps_den,
        codec_id=codec_id, scheme_id=scheme_id, flags=flags,
        sample_rate=sample_rate, channels=channels, bits_per_sample=bits_per_sample,
        key_blob=key_blob
    )
    
    records: List[FrameRecord] = []
    for position in range(frame_count):
        offset, video_len, audio_len = INDEX_ENTRY_STRUCT.unpack_from(data, cursor + position * INDEX_ENTRY_STRUCT.size)
        end = offset + video_len + audio_len
        if offset < index_end or end > len(data):
            raise FormatError(f"index table pointing outside file (frame {position})")
        records.append(FrameRecord(
            original_index=position,
            video_payload=data[offset:offset + video_len],
            audio_payload=data[offset + video_len:end]
        ))
    
    records_tuple = tuple(records)
    validate_header(header, records_tuple)
    
    logger.debug(f"Parsed SVC: {width}x{height}, {frame_count} frames, codec {header.codec_name}, "
                 f"scheme {header.scheme_name}")
    return SvcFile(header, records_tuple)

# ============================================================================
# SUMMARY
# ============================================================================

def svc_summary(svc: SvcFile) -> Dict[str, Any]:
    """Header fields and index table as plain data"""
    header = svc.header
    index = []
    offset = HEADER_STRUCT.size + len(header.key_blob) + INDEX_ENTRY_STRUCT.size * svc.frame_count
    for record in svc.records:
        index.append({
            'frame': record.original_index,
            'offset': offset,
            'video_len': len(record.video_payload),
            'audio_len': len(record.audio_payload)
        })
        offset += len(record.video_payload) + len(record.audio_payload)
    
    return {
        'version': VERSION,
        'codec': header.codec_name,
        'scheme': header.scheme_name,
        'encrypted': header.encrypted,
        'width': header.width,
        'height': header.height,
        'fps': f"{header.fps_num}/{header.fps_den}",
        'frame_count': svc.frame_count,
        'sample_rate': header.sample_rate,
        'channels': header.channels,
        'key_blob_len': len(header.key_blob),
        'total_video_bytes': svc.total_video_bytes,
        'total_audio_bytes': svc.total_audio_bytes,
        'file_bytes': offset,
        'index': index
    }

# ============================================================================
# FILE I/O
# ============================================================================

def read_svc(path) -> SvcFile:
    """Read and parse a container file"""
    try:
        data = read_file_bytes(path)
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    return parse_svc(data)


def write_svc(path, svc: SvcFile) -> int:
    """Serialize and atomically write a container; returns the byte count"""
    data = serialize_svc(svc)
    atomic_write_bytes(path, data)
    logger.info(f"Wrote SVC file {path} ({len(data)} bytes, {svc.frame_count} frames)")
    return len(data)
