# modules/attack/attack_runner.py
"""
End-to-end known-plaintext attack runs producing JSON-ready reports

Attacker model: knows codec, container layout, qp, gop and scheme; knows no key.
Reports never raise on a failed precondition; they set precondition_failed.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from modules.codec.codec_syntax import parse_frame_syntax, write_frame_syntax
from modules.codec.codec_video import decode_video_tolerant, encode_video
from modules.container.svc_format import SvcFile
from modules.container.svc_media import RawVideo
from modules.keys.keys_permutation import Permutation, invert_permutation
from modules.metrics.metrics_quality import psnr
from modules.schemes.scheme_config import SCHEMES
from modules.schemes.scheme_crisscross import permute_levels
from modules.shared.errors import AttackError, SvcryptError
from .attack_kpa import apply_recovered, block_levels, kpa_coefficient_permutation, refine_all

logger = logging.getLogger(__name__)

DEFAULT_KEYSPACE_BITS = 128


def _base_report(cipher_svc: SvcFile, known_frames: int, keyspace_bits: int) -> Dict[str, Any]:
    return {
        'success': True,
        'scheme': cipher_svc.header.scheme_name,
        'known_frames': known_frames,
        'recovery_rate': 0.0,
        'unique': False,
        'precondition_failed': False,
        'keyspace_bits': keyspace_bits
    }


def align_by_audio(plain_svc: SvcFile, cipher_svc: SvcFile) -> Optional[List[int]]:
    """
    Container position of every plaintext frame, found through its audio chunk

    Frame shuffling moves audio with its frame, so a known plaintext chunk that
    occurs exactly once in the ciphertext pins its frame. None when any chunk
    is empty or not unique.
    """
    where: Dict[bytes, List[int]] = {}
    for position, record in enumerate(cipher_svc.records):
        where.setdefault(record.audio_payload, []).append(position)
    positions = []
    for record in plain_svc.records:
        found = where.get(record.audio_payload, [])
        if not record.audio_payload or len(found) != 1:
            return None
        positions.append(found[0])
    return positions


def run_byte_kpa(plain_svc: SvcFile, cipher_svc: SvcFile, known_frames: int = 5,
                 keyspace_bits: int = DEFAULT_KEYSPACE_BITS,
                 frame_positions: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    """
    Recover a byte permutation from the first known_frames payload pairs and
    apply it to the remaining frames

    Pairs always compare the same source frame: frame_positions[k] is the
    container position of plaintext frame k. Without it, schemes that shuffle
    frames are aligned through their audio chunks and the others by position.
    """
    report = _base_report(cipher_svc, known_frames, keyspace_bits)
    frame_count = min(plain_svc.frame_count, cipher_svc.frame_count)
    if not 1 <= known_frames < frame_count:
        raise AttackError(f"known_frames must be between 1 and {frame_count - 1}")

    if frame_positions is None:
        scheme = SCHEMES.get(report['scheme'])
        if scheme and scheme['shuffles_frames']:
            frame_positions = align_by_audio(plain_svc, cipher_svc)
            if frame_positions is None:
                report.update({'precondition_failed': True, 'error': "frame alignment unavailable"})
                return report
        else:
            frame_positions = list(range(frame_count))
    if len(frame_positions) < frame_count:
        raise AttackError(f"{len(frame_positions)} frame positions for {frame_count} frames")

    def cipher_payload(k: int) -> bytes:
        return cipher_svc.records[frame_positions[k]].video_payload

    pairs = [(plain_svc.records[k].video_payload, cipher_payload(k)) for k in range(known_frames)]

    try:
        classes = refine_all(pairs)
    except AttackError as e:
        logger.info(f"Byte KPA precondition failed: {e.message}")
        report.update({'precondition_failed': True, 'error': e.message})
        return report

    unseen = range(known_frames, frame_count)
    try:
        recovered, rate = apply_recovered(classes, [cipher_payload(k) for k in unseen])
    except AttackError as e:
        report.update({'precondition_failed': True, 'error': e.message})
        return report

    matches = [np.mean(np.frombuffer(guess, np.uint8) == np.frombuffer(plain_svc.records[k].video_payload, np.uint8))
               for guess, k in zip(recovered, unseen)
               if len(guess) == len(plain_svc.records[k].video_payload)]

    report.update({
        'recovery_rate': rate,
        'unique': classes.unique,
        'accuracy': float(np.mean(matches)) if matches else 0.0,
        'unseen_frames': len(recovered)
    })
    logger.info(f"Byte KPA on '{report['scheme']}': recovery {rate:.3f} from {known_frames} known frames")
    return report


def run_coefficient_kpa(plain_raw: RawVideo, cipher_svc: SvcFile, qp: int = 4, gop: int = 8,
                        known_frames: int = 4, keyspace_bits: int = DEFAULT_KEYSPACE_BITS) -> Dict[str, Any]:
    """
    Recover the crisscross coefficient permutation from known raw frames and
    verify it on the first held-out frame
    """
    report = _base_report(cipher_svc, known_frames, keyspace_bits)
    if cipher_svc.header.scheme_name != 'crisscross':
        raise AttackError(f"scheme mismatch: coefficient attack needs crisscross, file is "
                          f"{cipher_svc.header.scheme_name}")
    frame_count = min(plain_raw.frame_count, cipher_svc.frame_count)
    if not 1 <= known_frames <= frame_count:
        raise AttackError(f"known_frames must be between 1 and {frame_count}")

    width, height = cipher_svc.header.width, cipher_svc.header.height
    known = RawVideo(plain_raw.width, plain_raw.height, plain_raw.fps_num, plain_raw.fps_den,
                     plain_raw.frames[:known_frames])
    try:
        plain_frames = [parse_frame_syntax(payload, width, height) for payload in encode_video(known, qp, gop)]
        cipher_frames = [parse_frame_syntax(cipher_svc.records[k].video_payload, width, height)
                         for k in range(known_frames)]
        classes = kpa_coefficient_permutation(block_levels(plain_frames), block_levels(cipher_frames))
        guess = Permutation(tuple(int(d) for d in classes.best_guess()))
    except SvcryptError as e:
        logger.info(f"Coefficient KPA precondition failed: {e.message}")
        report.update({'precondition_failed': True, 'error': e.message})
        return report

    report.update({
        'recovery_rate': classes.singleton_fraction,
        'unique': classes.unique,
        'permutation': list(guess.mapping) if classes.unique else None
    })

    if known_frames < frame_count:
        inverse = invert_permutation(guess)
        payloads = []
        for record in cipher_svc.records:
            frame = parse_frame_syntax(record.video_payload, width, height)
            payloads.append(write_frame_syntax(permute_levels(frame, inverse)))
        decoded = decode_video_tolerant(payloads, width, height)
        frame, error = decoded[known_frames]
        report['heldout_frame'] = known_frames
        report['heldout_psnr_db'] = psnr(frame, plain_raw.frame_array(known_frames)) if frame is not None else 0.0

    logger.info(f"Coefficient KPA: {int(classes.singleton_mask().sum())}/64 slots recovered, "
                f"unique={classes.unique}")
    return report
