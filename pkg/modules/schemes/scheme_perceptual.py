# modules/schemes/scheme_perceptual.py
"""
Perceptual encryption of fixed-length codeword bits

Category 1 covers intra DC suffix and sign, category 2 the AC and non-intra DC
signs, category 3 the motion vector suffix and sign. Only the first
ceil(p * M) macroblock units of each frame are touched, so p steers how much
of the picture stays recognisable.
"""

from typing import List

from components.stage_timing import StageTimer
from modules.codec.codec_syntax import codeword_map, unit_count
from modules.container.svc_format import FrameRecord, SvcFile
from modules.keys.keys_stream import frame_tag
from modules.keys.keys_wrap import ShuffleKey
from .scheme_types import FrameOutcome, SchemeParams, map_frames, touched_bytes, unit_limit, xor_bits_at


def _apply(svc: SvcFile, key: ShuffleKey, params: SchemeParams, timer: StageTimer, workers: int):
    width, height = svc.header.width, svc.header.height
    classes = params.perceptual_classes()
    limit = unit_limit(unit_count(width, height), params.perceptual_fraction)

    with timer.stage('shredding'):
        positions = map_frames(
            lambda record: codeword_map(record.video_payload, width, height).bit_positions(classes, limit),
            list(svc.records), workers
        )

    def process(index):
        record = svc.records[index]
        video = xor_bits_at(record.video_payload, positions[index], key.frame_seed, frame_tag(b'pc', index))
        return FrameRecord(index, video, record.audio_payload)

    with timer.stage('aes'):
        records = map_frames(process, list(range(svc.frame_count)), workers)

    touched = sum(touched_bytes(frame_positions) for frame_positions in positions)
    aes_bits = sum(int(frame_positions.size) for frame_positions in positions)
    return FrameOutcome(records, touched, aes_bits)


def encrypt_perceptual(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                       timer: StageTimer, workers: int = 1) -> FrameOutcome:
    return _apply(svc, key, params, timer, workers)


def decrypt_perceptual(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                       timer: StageTimer, workers: int = 1) -> List[FrameRecord]:
    return _apply(svc, key, params, timer, workers).records
