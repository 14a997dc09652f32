# modules/codec/codec_video.py
"""
Video-level codec driver

Frame type schedule, sequential encode/decode with decoder-side references,
and conversion between RawVideo/AudioTrack and SVC containers.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from modules.container.svc_format import CODEC_DCT, CODEC_RAW, FrameRecord, SvcFile, SvcHeader
from modules.container.svc_media import AudioTrack, RawVideo, join_audio, partition_audio
from modules.shared.errors import BitstreamError, CodecError, SvcryptError
from .codec_frame import decode_frame, encode_frame
from .codec_transform import check_qp

logger = logging.getLogger(__name__)


def frame_types(frame_count: int, gop: int) -> List[str]:
    """I every gop frames starting at 0, P in between"""
    if gop < 1:
        raise CodecError(f"gop must be at least 1, got {gop}")
    return ['I' if index % gop == 0 else 'P' for index in range(frame_count)]


def encode_video(raw: RawVideo, qp: int = 4, gop: int = 8) -> List[bytes]:
    """Encode every frame; P-frames reference the decoded previous frame"""
    check_qp(qp)
    payloads: List[bytes] = []
    reference: Optional[np.ndarray] = None
    for index, frame_type in enumerate(frame_types(raw.frame_count, gop)):
        payload, cmap = encode_frame(raw.frame_array(index), reference, qp, frame_type)
        payloads.append(payload)
        reference = decode_frame(payload, raw.width, raw.height, reference)
        logger.debug(f"Frame {index} ({frame_type}): {len(payload)} bytes, "
                     f"{cmap.total_encryptable_bits} encryptable bits")
    logger.info(f"Encoded {raw.frame_count} frames at qp={qp}, gop={gop}: {sum(map(len, payloads))} bytes")
    return payloads


def decode_video(payloads: Sequence[bytes], width: int, height: int) -> List[np.ndarray]:
    """Sequential decode; the first failing frame raises BitstreamError"""
    frames: List[np.ndarray] = []
    reference: Optional[np.ndarray] = None
    for index, payload in enumerate(payloads):
        try:
            reference = decode_frame(payload, width, height, reference)
        except BitstreamError as e:
            raise BitstreamError(f"frame {index}: {e.message}") from e
        frames.append(reference)
    return frames


def decode_video_tolerant(payloads: Sequence[bytes], width: int,
                          height: int) -> List[Tuple[Optional[np.ndarray], Optional[str]]]:
    """
    Decode every frame, collecting failures instead of raising

    A failed frame yields (None, diagnostic); the next frame keeps the last
    successful reconstruction as its reference.
    """
    results = []
    reference: Optional[np.ndarray] = None
    for payload in payloads:
        try:
            frame = decode_frame(payload, width, height, reference)
        except BitstreamError as e:
            results.append((None, e.message))
            continue
        reference = frame
        results.append((frame, None))
    return results


def decode_payload(header: SvcHeader, payload: bytes, reference: Optional[np.ndarray] = None) -> np.ndarray:
    """Pixels of one payload for either codec"""
    if header.codec_id == CODEC_RAW:
        if len(payload) != header.width * header.height:
            raise BitstreamError(f"RAW payload of {len(payload)} bytes for {header.width}x{header.height}")
        return np.frombuffer(payload, dtype=np.uint8).reshape(header.height, header.width)
    return decode_frame(payload, header.width, header.height, reference)


def build_svc(raw: RawVideo, audio: Optional[AudioTrack] = None, codec: str = 'DCT',
              qp: int = 4, gop: int = 8) -> SvcFile:
    """Assemble an unencrypted container from raw media"""
    codec = codec.upper()
    if codec == 'DCT':
        payloads = encode_video(raw, qp, gop)
        codec_id = CODEC_DCT
    elif codec == 'RAW':
        payloads = list(raw.frames)
        codec_id = CODEC_RAW
    else:
        raise CodecError(f"unknown codec '{codec}'")

    chunks = partition_audio(audio, raw.frame_count)
    header = SvcHeader(
        width=raw.width,
        height=raw.height,
        fps_num=raw.fps_num,
        fps_den=raw.fps_den,
        codec_id=codec_id,
        sample_rate=audio.sample_rate if audio is not None else 0,
        channels=1 if audio is not None else 0
    )
    records = tuple(FrameRecord(index, payload, chunk)
                    for index, (payload, chunk) in enumerate(zip(payloads, chunks)))
    return SvcFile(header, records)


def export_frames(svc: SvcFile, tolerant: bool = False) -> Tuple[List[np.ndarray], Optional[AudioTrack]]:
    """
    Decode every frame and stitch the audio back together in stored order

    With tolerant=True an undecodable frame is exported as flat gray instead of
    aborting, so the scrambled picture and audio of an encrypted file can be
    inspected.
    """
    header = svc.header
    frames: List[np.ndarray] = []
    reference: Optional[np.ndarray] = None
    for index, record in enumerate(svc.records):
        try:
            frame = decode_payload(header, record.video_payload, reference)
        except SvcryptError as e:
            if not tolerant:
                raise BitstreamError(f"frame {index}: {e.message}") from e
            logger.warning(f"Frame {index} not decodable, exported as gray: {e.message}")
            frame = np.full((header.height, header.width), 128, dtype=np.uint8)
        else:
            reference = frame
        frames.append(frame)

    audio = None
    if header.channels:
        audio = join_audio([record.audio_payload for record in svc.records], header.sample_rate)
    return frames, audio
