# modules/metrics/metrics_quality.py
"""
Quality, ratio, compliance and key-sensitivity metrics
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from modules.codec.codec_video import decode_video_tolerant
from modules.container.svc_format import CODEC_RAW, SvcFile
from modules.keys.keys_wrap import MasterKey, ShuffleKey
from modules.schemes.scheme_coordinator import SchemeCoordinator
from modules.schemes.scheme_types import SchemeParams, SchemeReport

logger = logging.getLogger(__name__)

PSNR_INF = math.inf
# Identical frames are counted at this value when averaged with finite ones
PSNR_CAP_DB = 100.0
PEAK = 255.0

# ============================================================================
# PSNR
# ============================================================================

def psnr(a: np.ndarray, b: np.ndarray) -> float:
    """10*log10(255^2 / MSE); identical frames give +inf"""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return PSNR_INF
    return 10.0 * math.log10(PEAK * PEAK / mse)


def mean_psnr(frames_a: Sequence[np.ndarray], frames_b: Sequence[np.ndarray]) -> float:
    """Mean per-frame PSNR; +inf only when every pair is identical"""
    values = [psnr(a, b) for a, b in zip(frames_a, frames_b)]
    if not values:
        raise ValueError("no frames to compare")
    if all(math.isinf(value) for value in values):
        return PSNR_INF
    return float(np.mean([min(value, PSNR_CAP_DB) for value in values]))


def decoded_frames(svc: SvcFile) -> List[np.ndarray]:
    """Pixels of every stored frame; undecodable frames come out flat gray"""
    header = svc.header
    gray = np.full((header.height, header.width), 128, dtype=np.uint8)
    if header.codec_id == CODEC_RAW:
        return [np.frombuffer(r.video_payload, dtype=np.uint8).reshape(header.height, header.width)
                for r in svc.records]
    results = decode_video_tolerant([r.video_payload for r in svc.records], header.width, header.height)
    return [frame if frame is not None else gray for frame, _ in results]

# ============================================================================
# RATIOS AND COMPLIANCE
# ============================================================================

def encryption_ratio(report: SchemeReport) -> Tuple[float, float]:
    """(bytes touched / payload bytes, encrypted file bytes / original file bytes)"""
    if report.total_payload_bytes <= 0 or report.original_file_bytes <= 0:
        raise ValueError("zero-byte video")
    er_touched = report.bytes_touched / report.total_payload_bytes
    er_size = report.encrypted_file_bytes / report.original_file_bytes
    return er_touched, er_size


def compliance_check(svc: SvcFile) -> Dict[str, Any]:
    """
    Decode every frame payload with the stock decoder

    Returns {'success', 'compliant', 'frames', 'failed_frames', 'diagnostics'};
    compliant is True iff every frame decodes.
    """
    header = svc.header
    diagnostics: Dict[int, str] = {}
    if header.codec_id == CODEC_RAW:
        plane = header.width * header.height
        for index, record in enumerate(svc.records):
            if len(record.video_payload) != plane:
                diagnostics[index] = f"RAW payload of {len(record.video_payload)} bytes"
    else:
        results = decode_video_tolerant([r.video_payload for r in svc.records], header.width, header.height)
        diagnostics = {index: error for index, (_, error) in enumerate(results) if error is not None}

    if diagnostics:
        logger.warning(f"Compliance: {len(diagnostics)}/{svc.frame_count} frames failed to decode")
    return {
        'success': True,
        'compliant': not diagnostics,
        'frames': svc.frame_count,
        'failed_frames': sorted(diagnostics),
        'failure_rate': len(diagnostics) / svc.frame_count if svc.frame_count else 0.0,
        'diagnostics': diagnostics
    }

# ============================================================================
# METRICS REPORT
# ============================================================================

@dataclass
class MetricsReport:
    scheme: str
    er_touched: float
    er_size: float
    psnr_encrypted_db: float
    size_ratio: float
    compliant: bool
    aes_bits: int = 0
    stage_timings: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def measure(original: SvcFile, encrypted: SvcFile, report: SchemeReport) -> MetricsReport:
    """All quality and ratio figures of one encryption run"""
    er_touched, er_size = encryption_ratio(report)
    return MetricsReport(
        scheme=report.scheme,
        er_touched=er_touched,
        er_size=er_size,
        psnr_encrypted_db=mean_psnr(decoded_frames(encrypted), decoded_frames(original)),
        size_ratio=encrypted.total_video_bytes / original.total_video_bytes,
        compliant=compliance_check(encrypted)['compliant'],
        aes_bits=report.aes_bits,
        stage_timings=dict(report.stage_timings)
    )

# ============================================================================
# KEY SENSITIVITY AND AUDIO DISPLACEMENT
# ============================================================================

def flip_bit(data: bytes, bit: int) -> bytes:
    buffer = bytearray(data)
    buffer[bit // 8] ^= 0x80 >> (bit % 8)
    return bytes(buffer)


def payload_difference(first: SvcFile, second: SvcFile) -> float:
    """Fraction of video payload bytes that differ position by position"""
    differing = 0
    total = 0
    for a, b in zip(first.records, second.records):
        a_bytes = np.frombuffer(a.video_payload, dtype=np.uint8)
        b_bytes = np.frombuffer(b.video_payload, dtype=np.uint8)
        common = min(len(a_bytes), len(b_bytes))
        differing += int(np.count_nonzero(a_bytes[:common] != b_bytes[:common]))
        differing += abs(len(a_bytes) - len(b_bytes))
        total += max(len(a_bytes), len(b_bytes))
    return differing / total if total else 0.0


def key_sensitivity(svc: SvcFile, master_a: MasterKey, master_b: MasterKey,
                    params: Optional[SchemeParams] = None, flipped_bit: int = 0,
                    shuffle_key: Optional[ShuffleKey] = None) -> float:
    """
    Fraction of payload bytes that differ between two encryptions

    The master key only seals the shuffle key, so the second run also uses a
    shuffle key with one bit flipped (bit 0 = top bit of the frame seed).
    """
    shuffle_key = shuffle_key or ShuffleKey.generate()
    other = ShuffleKey.from_bytes(flip_bit(shuffle_key.to_bytes(), flipped_bit))
    coordinator = SchemeCoordinator()
    first, _ = coordinator.encrypt(svc, master_a, params, shuffle_key)
    second, _ = coordinator.encrypt(svc, master_b, params, other)
    return payload_difference(first, second)


def audio_displacement(original: SvcFile, encrypted: SvcFile) -> float:
    """Fraction of non-empty audio chunks no longer at their original position"""
    pairs = [(a.audio_payload, b.audio_payload) for a, b in zip(original.records, encrypted.records)
             if a.audio_payload]
    if not pairs:
        return 0.0
    return sum(1 for a, b in pairs if a != b) / len(pairs)
