# modules/schemes/scheme_proposed.py
"""
Proposed scheme: frame shuffling, macroblock jumbling, selective AES

Encryption, in stage order:
  shredding  split every frame payload into its macroblock units
  shuffling  permute frame records (audio travels with its frame), then the
             units inside each frame
  stitching  join units back into payloads and records into the container
  aes        XOR the selected codeword bits of each stitched payload

Domain tags: b'frame' for the frame permutation, b'block' + position for the
unit permutation of the frame stored at that position, b'cw' + position for the
codeword keystream.
"""

import logging
from typing import List

from components.stage_timing import StageTimer
from modules.codec.codec_syntax import codeword_map, join_units, split_units
from modules.container.svc_format import FrameRecord, SvcFile
from modules.keys.keys_permutation import derive_permutation, invert_permutation
from modules.keys.keys_stream import frame_tag
from modules.keys.keys_wrap import ShuffleKey
from .scheme_types import FrameOutcome, SchemeParams, map_frames, xor_bits_at

logger = logging.getLogger(__name__)


def _xor_codewords(payload: bytes, position: int, key: ShuffleKey, params: SchemeParams,
                   width: int, height: int):
    positions = codeword_map(payload, width, height).bit_positions(params.classes)
    return xor_bits_at(payload, positions, key.frame_seed, frame_tag(b'cw', position)), int(positions.size)


def frame_positions(key: ShuffleKey, frame_count: int) -> List[int]:
    """Container position of every source frame after the frame shuffle"""
    return list(derive_permutation(key.frame_seed, b'frame', frame_count).mapping)


def encrypt_proposed(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                     timer: StageTimer, workers: int = 1) -> FrameOutcome:
    width, height = svc.header.width, svc.header.height
    frame_count = svc.frame_count
    if frame_count == 0:
        return FrameOutcome([])

    with timer.stage('shredding'):
        records = list(svc.records)
        split = map_frames(lambda record: split_units(record.video_payload, width, height), records, workers)

    with timer.stage('shuffling'):
        frame_perm = derive_permutation(key.frame_seed, b'frame', frame_count)
        records = frame_perm.apply(records)
        split = frame_perm.apply(split)

        def jumble(item):
            position, (header, units) = item
            block_perm = derive_permutation(key.block_seed, frame_tag(b'block', position), len(units))
            return header, block_perm.apply(units)

        split = map_frames(jumble, list(enumerate(split)), workers)

    with timer.stage('stitching'):
        payloads = [join_units(header, units) for header, units in split]

    with timer.stage('aes'):
        results = map_frames(
            lambda item: _xor_codewords(item[1], item[0], key, params, width, height),
            list(enumerate(payloads)), workers
        )

    out = [FrameRecord(position, payload, records[position].audio_payload)
           for position, (payload, _) in enumerate(results)]
    aes_bits = sum(bits for _, bits in results)
    logger.debug(f"Proposed: {frame_count} frames shuffled, {aes_bits} codeword bits encrypted")
    return FrameOutcome(out, svc.total_video_bytes, aes_bits)


def decrypt_proposed(svc: SvcFile, key: ShuffleKey, params: SchemeParams,
                     timer: StageTimer, workers: int = 1) -> List[FrameRecord]:
    width, height = svc.header.width, svc.header.height
    frame_count = svc.frame_count
    if frame_count == 0:
        return []

    records = list(svc.records)
    with timer.stage('aes'):
        payloads = [payload for payload, _ in map_frames(
            lambda item: _xor_codewords(item[1].video_payload, item[0], key, params, width, height),
            list(enumerate(records)), workers
        )]

    with timer.stage('shredding'):
        split = map_frames(lambda payload: split_units(payload, width, height), payloads, workers)

    with timer.stage('shuffling'):
        def unjumble(item):
            position, (header, units) = item
            block_perm = derive_permutation(key.block_seed, frame_tag(b'block', position), len(units))
            return header, invert_permutation(block_perm).apply(units)

        split = map_frames(unjumble, list(enumerate(split)), workers)

    with timer.stage('stitching'):
        restored = [FrameRecord(position, join_units(header, units), records[position].audio_payload)
                    for position, (header, units) in enumerate(split)]

    with timer.stage('shuffling'):
        frame_perm = derive_permutation(key.frame_seed, b'frame', frame_count)
        restored = invert_permutation(frame_perm).apply(restored)

    return restored
