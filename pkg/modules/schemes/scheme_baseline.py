# modules/schemes/scheme_baseline.py
"""
Whole-payload baselines: full AES, pure scrambling, choose-and-encrypt
"""

import logging
from typing import List

import numpy as np

from components.stage_timing import StageTimer
from modules.container.svc_format import CODEC_RAW, FrameRecord, SvcFile
from modules.keys.keys_permutation import derive_permutation, invert_permutation
from modules.keys.keys_stream import frame_tag
from modules.keys.keys_wrap import ShuffleKey
from modules.shared.errors import SchemeError
from .scheme_types import FrameOutcome, SchemeParams, map_frames, selected_frames, xor_bytes

logger = logging.getLogger(__name__)

# ============================================================================
# FULL: AES-CTR OVER EVERY BYTE
# ============================================================================

def _xor_whole_file(svc: SvcFile, key: ShuffleKey, timer: StageTimer) -> List[FrameRecord]:
    with timer.stage('shredding'):
        lengths = [(len(r.video_payload), len(r.audio_payload)) for r in svc.records]
        data = b''.join(r.video_payload + r.audio_payload for r in svc.records)

    with timer.stage('aes'):
        xored = xor_bytes(data, key.frame_seed, key.stream_nonce)

    with timer.stage('stitching'):
        records = []
        offset = 0
        for index, (video_len, audio_len) in enumerate(lengths):
            video = xored[offset:offset + video_len]
            audio = xored[offset + video_len:offset + video_len + audio_len]
            records.append(FrameRecord(index, video, audio))
            offset += video_len + audio_len
    return records


def encrypt_full(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                 timer: StageTimer, workers: int = 1) -> FrameOutcome:
    records = _xor_whole_file(svc, key, timer)
    aes_bits = 8 * (svc.total_video_bytes + svc.total_audio_bytes)
    return FrameOutcome(records, svc.total_video_bytes, aes_bits)


def decrypt_full(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                 timer: StageTimer, workers: int = 1) -> List[FrameRecord]:
    return _xor_whole_file(svc, key, timer)

# ============================================================================
# PURE: ONE BYTE PERMUTATION FOR EVERY FRAME
# ============================================================================

def _pure_permutation(svc: SvcFile, key: ShuffleKey):
    if svc.header.codec_id != CODEC_RAW:
        raise SchemeError("pure scrambling requires RAW payloads")
    return derive_permutation(key.frame_seed, b'pure', svc.header.width * svc.header.height)


def _permute_records(svc: SvcFile, permutation, timer: StageTimer, workers: int) -> List[FrameRecord]:
    destinations = permutation.as_array()

    def scramble(record: FrameRecord) -> FrameRecord:
        out = np.empty(len(record.video_payload), dtype=np.uint8)
        out[destinations] = np.frombuffer(record.video_payload, dtype=np.uint8)
        return FrameRecord(record.original_index, out.tobytes(), record.audio_payload)

    with timer.stage('shuffling'):
        return map_frames(scramble, list(svc.records), workers)


def encrypt_pure(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                 timer: StageTimer, workers: int = 1) -> FrameOutcome:
    with timer.stage('shredding'):
        permutation = _pure_permutation(svc, key)
    records = _permute_records(svc, permutation, timer, workers)
    return FrameOutcome(records, svc.total_video_bytes, 0)


def decrypt_pure(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                 timer: StageTimer, workers: int = 1) -> List[FrameRecord]:
    with timer.stage('shredding'):
        permutation = invert_permutation(_pure_permutation(svc, key))
    return _permute_records(svc, permutation, timer, workers)

# ============================================================================
# CHOOSE: AES-CTR OVER A FRACTION OF THE FRAMES
# ============================================================================

def _xor_selected(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                  timer: StageTimer, workers: int) -> FrameOutcome:
    with timer.stage('shredding'):
        chosen = set(selected_frames(svc.frame_count, params.fraction))

    def process(item):
        index, record = item
        if index not in chosen:
            return record
        video = xor_bytes(record.video_payload, key.frame_seed, frame_tag(b'choose', index))
        return FrameRecord(index, video, record.audio_payload)

    with timer.stage('aes'):
        records = map_frames(process, list(enumerate(svc.records)), workers)

    touched = sum(len(svc.records[index].video_payload) for index in chosen)
    logger.debug(f"Choose: {len(chosen)} of {svc.frame_count} frames encrypted")
    return FrameOutcome(records, touched, 8 * touched)


def encrypt_choose(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                   timer: StageTimer, workers: int = 1) -> FrameOutcome:
    return _xor_selected(svc, key, params, timer, workers)


def decrypt_choose(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                   timer: StageTimer, workers: int = 1) -> List[FrameRecord]:
    return _xor_selected(svc, key, params, timer, workers).records
