# modules/schemes/scheme_crisscross.py
"""
Crisscross: a keyed 64-entry permutation applied to the zigzag levels of every
block before entropy coding. Payload sizes change because the coder no longer
sees the usual low-to-high frequency ordering.
"""

from dataclasses import replace
from typing import List

from components.stage_timing import StageTimer
from modules.codec.codec_syntax import EncodedFrame, parse_frame_syntax, write_frame_syntax
from modules.container.svc_format import FrameRecord, SvcFile
from modules.keys.keys_permutation import Permutation, derive_permutation, invert_permutation
from modules.keys.keys_wrap import ShuffleKey
from .scheme_types import FrameOutcome, SchemeParams, map_frames

COEFFICIENTS = 64


def coefficient_permutation(key: ShuffleKey) -> Permutation:
    return derive_permutation(key.block_seed, b'criss', COEFFICIENTS)


def permute_levels(frame: EncodedFrame, permutation: Permutation) -> EncodedFrame:
    units = tuple(
        replace(unit, blocks=tuple(tuple(permutation.apply(levels)) for levels in unit.blocks))
        for unit in frame.units
    )
    return replace(frame, units=units)


def _recode(svc: SvcFile, permutation: Permutation, timer: StageTimer, workers: int) -> List[FrameRecord]:
    width, height = svc.header.width, svc.header.height
    records = list(svc.records)

    with timer.stage('shredding'):
        frames = map_frames(lambda record: parse_frame_syntax(record.video_payload, width, height),
                            records, workers)
    with timer.stage('shuffling'):
        frames = map_frames(lambda frame: permute_levels(frame, permutation), frames, workers)
    with timer.stage('stitching'):
        payloads = map_frames(write_frame_syntax, frames, workers)

    return [FrameRecord(index, payload, record.audio_payload)
            for index, (payload, record) in enumerate(zip(payloads, records))]


def encrypt_crisscross(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                       timer: StageTimer, workers: int = 1) -> FrameOutcome:
    records = _recode(svc, coefficient_permutation(key), timer, workers)
    return FrameOutcome(records, svc.total_video_bytes, 0)


def decrypt_crisscross(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                       timer: StageTimer, workers: int = 1) -> List[FrameRecord]:
    return _recode(svc, invert_permutation(coefficient_permutation(key)), timer, workers)
