# modules/container/svc_media.py
"""
Raw media ingestion and export

Reads PGM sequences, headerless luma streams and PCM16 mono WAV files into
RawVideo / AudioTrack values, splits audio at frame boundaries and writes
frames and audio back out.
"""

import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy.io import wavfile

from components.file_operations import atomic_write_bytes
from modules.shared.errors import FormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# ============================================================================
# DATA TYPES
# ============================================================================

@dataclass(frozen=True)
class RawVideo:
    """Planar 8-bit luma frames"""
    width: int
    height: int
    fps_num: int
    fps_den: int
    frames: Tuple[bytes, ...]

    def __post_init__(self):
        check_dimensions(self.width, self.height)
        if self.fps_num < 1 or self.fps_den < 1:
            raise FormatError(f"invalid frame rate {self.fps_num}/{self.fps_den}")
        plane = self.width * self.height
        for index, frame in enumerate(self.frames):
            if len(frame) != plane:
                raise FormatError(f"frame {index} has {len(frame)} bytes, expected {plane}")

    @property
    def frame_count(self) -> int:
        return len(self.frames)

    def frame_array(self, index: int) -> np.ndarray:
        return np.frombuffer(self.frames[index], dtype=np.uint8).reshape(self.height, self.width)

    @classmethod
    def from_arrays(cls, arrays: Sequence[np.ndarray], fps: Tuple[int, int] = (25, 1)) -> 'RawVideo':
        if not arrays:
            raise FormatError("no frames")
        height, width = np.asarray(arrays[0]).shape
        frames = tuple(np.ascontiguousarray(a, dtype=np.uint8).tobytes() for a in arrays)
        return cls(width, height, fps[0], fps[1], frames)


@dataclass(frozen=True)
class AudioTrack:
    """Signed 16-bit mono PCM, stored little-endian"""
    sample_rate: int
    pcm: bytes = b''

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise FormatError(f"invalid sample rate {self.sample_rate}")
        if len(self.pcm) % 2:
            raise FormatError("odd PCM byte count")

    @property
    def samples(self) -> np.ndarray:
        return np.frombuffer(self.pcm, dtype='<i2')

    @property
    def sample_count(self) -> int:
        return len(self.pcm) // 2

    @classmethod
    def from_samples(cls, sample_rate: int, samples) -> 'AudioTrack':
        return cls(sample_rate, np.asarray(samples, dtype='<i2').tobytes())


def check_dimensions(width: int, height: int) -> None:
    if width < 16 or height < 16 or width % 16 or height % 16:
        raise FormatError(f"dimensions {width}x{height} must be multiples of 16 and at least 16")


def parse_dims(text: str) -> Tuple[int, int]:
    """'64x48' -> (64, 48)"""
    try:
        width, height = (int(part) for part in text.lower().split('x'))
    except ValueError:
        raise FormatError(f"invalid dimensions '{text}', expected WxH")
    check_dimensions(width, height)
    return width, height


def parse_fps(text: str) -> Tuple[int, int]:
    """'25' or '30000/1001' -> (num, den)"""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"invalid frame rate '{text}'")
    if value <= 0 or value.numerator > 0xFFFF or value.denominator > 0xFFFF:
        raise FormatError(f"frame rate '{text}' out of range")
    return value.numerator, value.denominator

# ============================================================================
# INGESTION
# ============================================================================

def ingest_raw(frame_source: Union[PathLike, Sequence[PathLike]],
               dims: Optional[Tuple[int, int]] = None,
               fps: Tuple[int, int] = (25, 1),
               audio_source: Optional[PathLike] = None) -> Tuple[RawVideo, Optional[AudioTrack]]:
    """
    Load frames and optional audio

    frame_source is a directory of PGM files (sorted by name), a list of PGM
    paths, a single .pgm file, or a headerless 8-bit luma stream (dims required).
    Returns (RawVideo, AudioTrack or None when no audio source is given).
    """
    if isinstance(frame_source, (list, tuple)):
        arrays = [_read_pgm(path, dims) for path in frame_source]
    else:
        source = Path(frame_source)
        if source.is_dir():
            paths = sorted(p for p in source.iterdir() if p.suffix.lower() == '.pgm')
            if not paths:
                raise FormatError(f"no PGM files in {source}")
            arrays = [_read_pgm(path, dims) for path in paths]
        elif source.suffix.lower() == '.pgm':
            arrays = [_read_pgm(source, dims)]
        else:
            arrays = _read_luma_stream(source, dims)

    if not arrays:
        raise FormatError("no frames")
    shape = arrays[0].shape
    for path_index, array in enumerate(arrays):
        if array.shape != shape:
            raise FormatError(f"dimension mismatch: frame {path_index} is {array.shape[1]}x{array.shape[0]}")

    video = RawVideo.from_arrays(arrays, fps)
    audio = read_wav(audio_source) if audio_source is not None else None
    logger.info(f"Ingested {video.frame_count} frames {video.width}x{video.height}"
                f"{f', {audio.sample_count} audio samples' if audio else ''}")
    return video, audio


def _read_pgm(path: PathLike, dims: Optional[Tuple[int, int]]) -> np.ndarray:
    try:
        with open(path, 'rb') as handle:
            if handle.read(2) != b'P5':
                raise FormatError(f"{path}: not a binary PGM (P5)")
        with Image.open(path) as image:
            if image.mode != 'L':
                raise FormatError(f"{path}: unsupported PGM (8-bit maxval 255 required)")
            array = np.array(image, dtype=np.uint8)
    except (OSError, UnidentifiedImageError) as e:
        raise FormatError(f"{path}: cannot read PGM: {e}") from e

    if dims is not None and (array.shape[1], array.shape[0]) != tuple(dims):
        raise FormatError(f"dimension mismatch: {path} is {array.shape[1]}x{array.shape[0]}, "
                          f"expected {dims[0]}x{dims[1]}")
    return array


def _read_luma_stream(path: Path, dims: Optional[Tuple[int, int]]) -> List[np.ndarray]:
    if dims is None:
        raise FormatError("headerless luma stream requires explicit dims")
    width, height = dims
    check_dimensions(width, height)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e

    plane = width * height
    if not data:
        raise FormatError(f"{path}: empty luma stream")
    if len(data) % plane:
        raise FormatError(f"truncated luma stream: {len(data)} bytes is not a multiple of {plane}")

    buffer = np.frombuffer(data, dtype=np.uint8)
    return [buffer[i:i + plane].reshape(height, width) for i in range(0, len(data), plane)]


def read_wav(path: PathLike) -> AudioTrack:
    """Load a PCM16 mono WAV file; anything else is rejected"""
    try:
        sample_rate, samples = wavfile.read(str(path))
    except (OSError, ValueError) as e:
        raise FormatError(f"{path}: cannot read WAV: {e}") from e

    if samples.ndim != 1 or samples.dtype != np.int16:
        raise FormatError("unsupported audio layout (16-bit PCM mono required)")
    return AudioTrack.from_samples(sample_rate, samples)

# ============================================================================
# AUDIO PARTITIONING
# ============================================================================

def partition_audio(track: Optional[AudioTrack], frame_count: int,
                    fps: Optional[Tuple[int, int]] = None) -> List[bytes]:
    """
    Split PCM into one chunk per frame

    Chunk i holds samples [floor(i*S/N), floor((i+1)*S/N)). The frame rate
    does not enter the boundary rule; it is accepted for call-site symmetry.
    """
    if frame_count < 1:
        raise FormatError("frame_count must be at least 1")
    if track is None or not track.pcm:
        return [b''] * frame_count

    total = track.sample_count
    bounds = [(i * total) // frame_count for i in range(frame_count + 1)]
    return [track.pcm[2 * bounds[i]:2 * bounds[i + 1]] for i in range(frame_count)]


def join_audio(chunks: Sequence[bytes], sample_rate: int) -> AudioTrack:
    return AudioTrack(sample_rate, b''.join(chunks))

# ============================================================================
# EXPORT
# ============================================================================

def encode_pgm(frame: np.ndarray) -> bytes:
    """Binary PGM bytes for one luma plane"""
    buffer = io.BytesIO()
    Image.fromarray(np.asarray(frame, dtype=np.uint8), mode='L').save(buffer, format='PPM')
    return buffer.getvalue()


def encode_wav(track: AudioTrack) -> bytes:
    buffer = io.BytesIO()
    wavfile.write(buffer, track.sample_rate, track.samples)
    return buffer.getvalue()


def write_pgm(path: PathLike, frame: np.ndarray) -> None:
    atomic_write_bytes(path, encode_pgm(frame))


def write_wav(path: PathLike, track: AudioTrack) -> None:
    atomic_write_bytes(path, encode_wav(track))
