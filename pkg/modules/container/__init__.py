"""
Container Module Package

This package contains the SVC container and raw media handling:
- Header, index table and frame records (svc_format)
- PGM/luma/WAV ingestion, audio partitioning and export (svc_media)
- Deterministic synthetic desk corpus (svc_corpus)
"""

from .svc_format import (
    MAGIC, VERSION, CODEC_RAW, CODEC_DCT, CODEC_NAMES, FLAG_ENCRYPTED, SCHEME_IDS,
    SvcHeader, FrameRecord, SvcFile,
    serialize_svc, parse_svc, read_svc, write_svc, svc_summary, validate_header
)
from .svc_media import (
    RawVideo, AudioTrack, ingest_raw, read_wav, partition_audio, join_audio,
    parse_dims, parse_fps, check_dimensions, encode_pgm, encode_wav, write_pgm, write_wav
)
from .svc_corpus import synthetic_clip, synthetic_corpus, CORPUS_CLIPS

__all__ = [
    'MAGIC', 'VERSION', 'CODEC_RAW', 'CODEC_DCT', 'CODEC_NAMES', 'FLAG_ENCRYPTED', 'SCHEME_IDS',
    'SvcHeader', 'FrameRecord', 'SvcFile',
    'serialize_svc', 'parse_svc', 'read_svc', 'write_svc', 'svc_summary', 'validate_header',
    'RawVideo', 'AudioTrack', 'ingest_raw', 'read_wav', 'partition_audio', 'join_audio',
    'parse_dims', 'parse_fps', 'check_dimensions', 'encode_pgm', 'encode_wav', 'write_pgm', 'write_wav',
    'synthetic_clip', 'synthetic_corpus', 'CORPUS_CLIPS'
]
