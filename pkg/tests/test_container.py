# test_container.py
"""
Container format, media ingestion and audio partitioning
"""

import numpy as np
import pytest
from scipy.io import wavfile

from modules.container.svc_corpus import CORPUS_CLIPS, synthetic_clip, synthetic_corpus
from modules.container.svc_format import (
    CODEC_RAW, FLAG_ENCRYPTED, HEADER_STRUCT, FrameRecord, SvcFile, SvcHeader, parse_svc, read_svc, serialize_svc,
    svc_summary, write_svc
)
from modules.container.svc_media import (
    AudioTrack, ingest_raw, join_audio, parse_dims, parse_fps, partition_audio, read_wav, write_pgm, write_wav
)
from modules.shared.errors import FormatError

# ============================================================================
# SERIALIZATION
# ============================================================================

def test_parse_inverts_serialize(dct_svc, raw_svc):
    for svc in (dct_svc, raw_svc):
        assert parse_svc(serialize_svc(svc)) == svc


def test_serialize_is_deterministic(dct_svc):
    assert serialize_svc(dct_svc) == serialize_svc(parse_svc(serialize_svc(dct_svc)))


def _random_svc(rng) -> SvcFile:
    width, height = 16 * int(rng.integers(1, 5)), 16 * int(rng.integers(1, 5))
    codec = int(rng.integers(0, 2))
    audio = bool(rng.integers(0, 2))
    encrypted = bool(rng.integers(0, 2))
    records = []
    for position in range(int(rng.integers(0, 6))):
        video_len = width * height if codec == CODEC_RAW else int(rng.integers(0, 200))
        audio_len = 2 * int(rng.integers(0, 50)) if audio else 0
        records.append(FrameRecord(
            position,
            rng.integers(0, 256, size=video_len, dtype=np.uint8).tobytes(),
            rng.integers(0, 256, size=audio_len, dtype=np.uint8).tobytes()
        ))
    header = SvcHeader(
        width, height, int(rng.integers(1, 61)), int(rng.integers(1, 3)), codec,
        scheme_id=int(rng.integers(1, 7)) if encrypted else 0,
        flags=FLAG_ENCRYPTED if encrypted else 0,
        sample_rate=8000 if audio else 0,
        channels=1 if audio else 0,
        key_blob=rng.integers(0, 256, size=78, dtype=np.uint8).tobytes() if encrypted else b''
    )
    return SvcFile(header, tuple(records))


def test_parse_inverts_serialize_on_random_containers():
    rng = np.random.default_rng(71)
    for _ in range(100):
        svc = _random_svc(rng)
        data = serialize_svc(svc)
        assert parse_svc(data) == svc
        assert serialize_svc(parse_svc(data)) == data


def test_summary_index_is_contiguous(dct_svc):
    summary = svc_summary(dct_svc)
    data = serialize_svc(dct_svc)
    assert summary['file_bytes'] == len(data)
    assert summary['frame_count'] == dct_svc.frame_count
    assert summary['codec'] == 'DCT'
    assert summary['encrypted'] is False
    for entry, following in zip(summary['index'], summary['index'][1:]):
        assert following['offset'] == entry['offset'] + entry['video_len'] + entry['audio_len']


def test_file_round_trip(tmp_path, dct_svc):
    path = tmp_path / 'clip.svc'
    size = write_svc(path, dct_svc)
    assert size == path.stat().st_size
    assert read_svc(path) == dct_svc
    assert not [p for p in tmp_path.iterdir() if p.name.endswith('.tmp')]


@pytest.mark.parametrize('mutate, message', [
    (lambda data: b'XXXX' + data[4:], 'bad magic'),
    (lambda data: data[:10], 'truncated header'),
    (lambda data: data[:4] + bytes([9]) + data[5:], 'version mismatch'),
    (lambda data: data[:HEADER_STRUCT.size + 4], 'truncated index table'),
    (lambda data: data[:-1], 'index table pointing outside file'),
    (lambda data: b'', 'bad magic'),
])
def test_parse_rejects_malformed_input(dct_svc, mutate, message):
    with pytest.raises(FormatError, match=message):
        parse_svc(mutate(serialize_svc(dct_svc)))


def test_parse_never_raises_foreign_exceptions(dct_svc):
    data = serialize_svc(dct_svc)
    rng = np.random.default_rng(1)
    for _ in range(50):
        corrupted = bytearray(data)
        for position in rng.integers(0, 64, size=4):
            corrupted[position] = int(rng.integers(0, 256))
        try:
            parse_svc(bytes(corrupted))
        except FormatError:
            pass


def test_encrypted_flag_requires_key_blob(dct_svc):
    inconsistent = dct_svc.with_header(flags=FLAG_ENCRYPTED)
    with pytest.raises(FormatError):
        serialize_svc(inconsistent)


def test_raw_payload_length_is_checked(raw_svc):
    record = raw_svc.records[0]
    broken = SvcFile(raw_svc.header, (type(record)(0, record.video_payload[:-1], record.audio_payload),)
                     + raw_svc.records[1:])
    with pytest.raises(FormatError):
        serialize_svc(broken)


def test_with_records_renumbers(dct_svc):
    reversed_svc = dct_svc.with_records(reversed(dct_svc.records))
    assert [r.original_index for r in reversed_svc.records] == list(range(dct_svc.frame_count))
    assert reversed_svc.records[0].video_payload == dct_svc.records[-1].video_payload

# ============================================================================
# AUDIO
# ============================================================================

def test_partition_uses_floor_boundaries():
    track = AudioTrack.from_samples(8000, np.arange(10))
    chunks = partition_audio(track, 3)
    assert [len(chunk) // 2 for chunk in chunks] == [3, 3, 4]
    assert join_audio(chunks, 8000) == track


def test_partition_without_audio_gives_empty_chunks():
    assert partition_audio(None, 4) == [b''] * 4
    assert partition_audio(AudioTrack(8000, b''), 2) == [b'', b'']


def test_partition_more_frames_than_samples():
    track = AudioTrack.from_samples(8000, [1, 2])
    chunks = partition_audio(track, 5)
    assert len(chunks) == 5
    assert b''.join(chunks) == track.pcm


def test_partition_conserves_samples():
    rng = np.random.default_rng(73)
    for _ in range(200):
        samples = rng.integers(-32768, 32768, size=int(rng.integers(0, 500)))
        frames = int(rng.integers(1, 40))
        track = AudioTrack.from_samples(8000, samples)
        chunks = partition_audio(track, frames)
        assert len(chunks) == frames
        sizes = [len(chunk) // 2 for chunk in chunks]
        assert max(sizes) - min(sizes) <= 1
        assert join_audio(chunks, 8000) == track


def test_build_svc_partitions_audio(dct_svc, small_clip):
    _, audio = small_clip
    assert b''.join(r.audio_payload for r in dct_svc.records) == audio.pcm
    assert dct_svc.header.channels == 1
    assert dct_svc.header.sample_rate == audio.sample_rate


def test_wav_round_trip(tmp_path):
    track = AudioTrack.from_samples(8000, np.array([0, 1000, -1000, 32767, -32768]))
    path = tmp_path / 'audio.wav'
    write_wav(path, track)
    assert read_wav(path) == track


def test_stereo_wav_is_rejected(tmp_path):
    path = tmp_path / 'stereo.wav'
    wavfile.write(str(path), 8000, np.zeros((100, 2), dtype=np.int16))
    with pytest.raises(FormatError, match='16-bit PCM mono required'):
        read_wav(path)

# ============================================================================
# INGESTION
# ============================================================================

def test_ingest_pgm_directory(tmp_path, small_clip):
    video, _ = small_clip
    for index in range(video.frame_count):
        write_pgm(tmp_path / f"frame_{index:04d}.pgm", video.frame_array(index))
    loaded, audio = ingest_raw(tmp_path)
    assert audio is None
    assert loaded.frames == video.frames
    assert (loaded.width, loaded.height) == (video.width, video.height)


def test_ingest_rejects_mixed_dimensions(tmp_path):
    write_pgm(tmp_path / 'a.pgm', np.zeros((16, 16), dtype=np.uint8))
    write_pgm(tmp_path / 'b.pgm', np.zeros((32, 16), dtype=np.uint8))
    with pytest.raises(FormatError, match='dimension mismatch'):
        ingest_raw(tmp_path)


def test_ingest_luma_stream(tmp_path):
    path = tmp_path / 'clip.yuv'
    path.write_bytes(bytes(range(256)) * 3)
    video, _ = ingest_raw(path, dims=(16, 16))
    assert video.frame_count == 3
    assert video.frame_array(2)[0, 5] == 5


def test_ingest_without_frames():
    with pytest.raises(FormatError, match='no frames'):
        ingest_raw([])


def test_ingest_truncated_luma_stream(tmp_path):
    path = tmp_path / 'clip.yuv'
    path.write_bytes(bytes(300))
    with pytest.raises(FormatError, match='truncated luma stream'):
        ingest_raw(path, dims=(16, 16))


def test_ingest_luma_stream_requires_dims(tmp_path):
    path = tmp_path / 'clip.yuv'
    path.write_bytes(bytes(256))
    with pytest.raises(FormatError):
        ingest_raw(path)


def test_parse_dims_and_fps():
    assert parse_dims('64x48') == (64, 48)
    assert parse_fps('30000/1001') == (30000, 1001)
    assert parse_fps('25') == (25, 1)
    with pytest.raises(FormatError):
        parse_dims('65x64')
    with pytest.raises(FormatError):
        parse_fps('0')

# ============================================================================
# SYNTHETIC CORPUS
# ============================================================================

def test_synthetic_clip_is_deterministic():
    first = synthetic_clip(3, 32, 32, 4, with_audio=True)
    second = synthetic_clip(3, 32, 32, 4, with_audio=True)
    assert first == second
    assert synthetic_clip(4, 32, 32, 4)[0] != first[0]


def test_corpus_shapes():
    corpus = synthetic_corpus()
    assert len(corpus) == len(CORPUS_CLIPS) == 8
    for (name, video, audio), (expected, width, height, frames, with_audio) in zip(corpus, CORPUS_CLIPS):
        assert name == expected
        assert (video.width, video.height, video.frame_count) == (width, height, frames)
        assert (audio is not None) == with_audio
