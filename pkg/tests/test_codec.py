# test_codec.py
"""
Exp-Golomb coding, transforms, frame syntax and the codeword map
"""

import math

import numpy as np
import pytest

from modules.codec.codec_bitstream import BitReader, BitWriter
from modules.codec.codec_frame import decode_frame, encode_frame
from modules.codec.codec_motion import motion_search
from modules.codec.codec_syntax import (
    ALL_CLASSES, CLASS_GROUPS, CodewordClass, codeword_map, extract_sensitive_bits, join_units,
    parse_class_groups, parse_frame, parse_frame_syntax, patch_bits_at, patch_sensitive_bits,
    split_units, unit_count, write_frame_syntax
)
from modules.codec.codec_transform import (
    ZIGZAG, dct8x8_forward, dct8x8_inverse, dequantize_block, quantize_block, round_half_away
)
from modules.codec.codec_video import decode_video, decode_video_tolerant, encode_video, frame_types
from modules.metrics.metrics_quality import psnr
from modules.shared.errors import BitstreamError, CodecError


def _bits(writer: BitWriter) -> str:
    return ''.join(str(bit) for bit in writer.bits)

# ============================================================================
# EXP-GOLOMB
# ============================================================================

@pytest.mark.parametrize('value, expected', [
    (0, '1'), (1, '010'), (2, '011'), (3, '00100'), (4, '00101'), (7, '0001000')
])
def test_ue_codewords(value, expected):
    writer = BitWriter()
    writer.write_ue(value)
    assert _bits(writer) == expected


def test_ue_suffix_offsets():
    writer = BitWriter()
    writer.write_bit(1)
    offset, width = writer.write_ue(508)
    assert width == 8
    assert offset == 1 + 9
    assert writer.write_ue(0) == (writer.position, 0)


def test_reader_round_trip():
    values = [0, 1, 5, 63, 508, 2046]
    writer = BitWriter()
    for value in values:
        writer.write_ue(value)
    reader = BitReader(writer.to_bytes())
    decoded = [reader.read_ue()[0] for _ in values]
    assert decoded == values


def test_reader_rejects_prefix_overrun():
    with pytest.raises(BitstreamError, match='prefix overrun'):
        BitReader(bytes(8)).read_ue()


def test_reader_rejects_truncation():
    reader = BitReader(b'\x00')
    with pytest.raises(BitstreamError, match='truncated'):
        reader.read_bits(9)

# ============================================================================
# TRANSFORM AND QUANTIZATION
# ============================================================================

def test_zigzag_prefix():
    assert list(ZIGZAG[:10]) == [0, 1, 8, 16, 9, 2, 3, 10, 17, 24]
    assert sorted(ZIGZAG) == list(range(64))


def test_round_half_away_from_zero():
    assert list(round_half_away(np.array([0.5, 1.5, -0.5, -1.5, 2.4]))) == [1, 2, -1, -2, 2]


def test_flat_block_has_only_dc():
    coeffs = dct8x8_forward(np.full((8, 8), 200))
    assert coeffs[0, 0] == pytest.approx(8 * 72)
    assert np.allclose(coeffs.reshape(-1)[1:], 0)
    assert np.array_equal(dct8x8_inverse(coeffs), np.full((8, 8), 200, dtype=np.uint8))


def _dct_basis() -> np.ndarray:
    basis = np.zeros((8, 8))
    for u in range(8):
        alpha = math.sqrt(1 / 8) if u == 0 else math.sqrt(2 / 8)
        for x in range(8):
            basis[u, x] = alpha * math.cos((2 * x + 1) * u * math.pi / 16)
    return basis


def test_dct_matches_direct_summation():
    rng = np.random.default_rng(41)
    basis = _dct_basis()
    for _ in range(50):
        pixels = rng.integers(0, 256, size=(8, 8))
        centered = pixels - 128.0
        expected = basis @ centered @ basis.T
        coeffs = dct8x8_forward(pixels)
        assert np.allclose(coeffs, expected, atol=1e-9)
        assert np.sum(coeffs ** 2) == pytest.approx(np.sum(centered ** 2))

        samples = basis.T @ coeffs @ basis + 128.0
        restored = np.clip(round_half_away(samples), 0, 255).astype(np.uint8)
        assert np.array_equal(dct8x8_inverse(coeffs), restored)
        assert np.array_equal(restored, pixels.astype(np.uint8))


def test_quantize_levels_in_zigzag_order():
    coeffs = np.zeros((8, 8))
    coeffs[0, 0] = 10
    coeffs[0, 1] = -3
    block = quantize_block(coeffs, 1)
    assert block.levels[0] == 5
    assert block.levels[1] == -2
    restored = dequantize_block(block, 1)
    assert restored[0, 0] == 10 and restored[0, 1] == -4


def test_quantize_rejects_bad_qp():
    with pytest.raises(CodecError):
        quantize_block(np.zeros((8, 8)), 0)
    with pytest.raises(CodecError):
        quantize_block(np.zeros((8, 8)), 32)

# ============================================================================
# FRAMES
# ============================================================================

def test_intra_frame_quality(small_clip):
    video, _ = small_clip
    payload, _ = encode_frame(video.frame_array(0), qp=4)
    decoded = decode_frame(payload, video.width, video.height)
    assert psnr(decoded, video.frame_array(0)) > 30.0


def test_encode_decode_video(small_clip):
    video, _ = small_clip
    payloads = encode_video(video, qp=4, gop=4)
    assert [payload[0] for payload in payloads] == [0, 1, 1, 1, 0, 1]
    frames = decode_video(payloads, video.width, video.height)
    for index, frame in enumerate(frames):
        assert psnr(frame, video.frame_array(index)) > 28.0


def test_frame_types():
    assert frame_types(5, 2) == ['I', 'P', 'I', 'P', 'I']
    assert frame_types(3, 1) == ['I', 'I', 'I']
    with pytest.raises(CodecError):
        frame_types(3, 0)


def test_write_inverts_parse(dct_svc):
    width, height = dct_svc.header.width, dct_svc.header.height
    for record in dct_svc.records:
        assert write_frame_syntax(parse_frame_syntax(record.video_payload, width, height)) == record.video_payload


def test_split_and_join_units(dct_svc):
    width, height = dct_svc.header.width, dct_svc.header.height
    payload = dct_svc.records[1].video_payload
    header, units = split_units(payload, width, height)
    assert len(header) == 2
    assert len(units) == unit_count(width, height) == 4
    assert join_units(header, units) == payload
    parse_frame(join_units(header, units[::-1]), width, height)


def test_dimension_violation():
    with pytest.raises(CodecError, match='dimension violation'):
        unit_count(20, 16)
    with pytest.raises(CodecError):
        encode_frame(np.zeros((16, 24), dtype=np.uint8))


def test_motion_search_finds_shift():
    rng = np.random.default_rng(5)
    reference = rng.integers(0, 256, size=(48, 48), dtype=np.uint8)
    current = np.roll(reference, shift=(2, 3), axis=(0, 1))
    assert motion_search(current, reference, (16, 16)) == (-3, -2)
    assert motion_search(reference, reference, (16, 16)) == (0, 0)


def _exhaustive_motion(current, reference, origin, window=7):
    height, width = reference.shape
    x, y = origin
    block = current[y:y + 16, x:x + 16].astype(np.int64)
    best = None
    for dy in range(-window, window + 1):
        for dx in range(-window, window + 1):
            rows = [min(max(r, 0), height - 1) for r in range(y + dy, y + dy + 16)]
            cols = [min(max(c, 0), width - 1) for c in range(x + dx, x + dx + 16)]
            patch = reference.astype(np.int64)[rows][:, cols]
            key = (int(np.abs(block - patch).sum()), abs(dx) + abs(dy), dy, dx)
            if best is None or key < best:
                best = key
    return best[3], best[2]


@pytest.mark.slow
def test_motion_search_matches_exhaustive_search():
    rng = np.random.default_rng(43)
    for trial in range(1000):
        levels = (1, 2, 4, 256)[trial % 4]
        reference = rng.integers(0, levels, size=(48, 48), dtype=np.uint8)
        if trial % 10 == 0:
            reference = np.full((48, 48), int(rng.integers(0, 256)), dtype=np.uint8)
        shift = tuple(int(s) for s in rng.integers(-9, 10, size=2))
        current = np.roll(reference, shift=shift, axis=(0, 1))
        if trial % 3 == 0:
            current = rng.integers(0, levels, size=(48, 48), dtype=np.uint8)
        origin = (16 * int(rng.integers(0, 3)), 16 * int(rng.integers(0, 3)))
        assert motion_search(current, reference, origin) == _exhaustive_motion(current, reference, origin)


def test_motion_ties_prefer_short_vectors():
    flat = np.full((48, 48), 90, dtype=np.uint8)
    assert motion_search(flat, flat, (16, 16)) == (0, 0)
    stripes = np.tile(np.array([0, 255], dtype=np.uint8), (48, 24))
    # every even dx matches exactly; the zero vector wins
    assert motion_search(stripes, stripes, (0, 0)) == (0, 0)
    shifted = np.roll(stripes, 1, axis=1)
    assert motion_search(shifted, stripes, (16, 16)) == (-1, 0)

# ============================================================================
# PARSER STRICTNESS
# ============================================================================

def test_parser_rejects_trailing_data(dct_svc):
    payload = dct_svc.records[0].video_payload
    with pytest.raises(BitstreamError, match='unit count mismatch'):
        parse_frame(payload + b'\x00', 32, 32)


def test_parser_rejects_truncation(dct_svc):
    payload = dct_svc.records[0].video_payload
    with pytest.raises(BitstreamError):
        parse_frame(payload[:len(payload) // 2], 32, 32)
    with pytest.raises(BitstreamError):
        parse_frame(payload[:1], 32, 32)


def test_parser_rejects_bad_header(dct_svc):
    payload = dct_svc.records[0].video_payload
    with pytest.raises(BitstreamError, match='invalid frame type'):
        parse_frame(b'\x07' + payload[1:], 32, 32)
    with pytest.raises(BitstreamError, match='invalid qp'):
        parse_frame(payload[:1] + b'\x00' + payload[2:], 32, 32)


def test_parser_rejects_p_unit_in_i_frame(dct_svc):
    p_payload = dct_svc.records[1].video_payload
    with pytest.raises(BitstreamError):
        parse_frame(b'\x00' + p_payload[1:], 32, 32)


def test_parser_is_total_on_random_bytes():
    rng = np.random.default_rng(11)
    for _ in range(200):
        data = rng.integers(0, 256, size=int(rng.integers(0, 80)), dtype=np.uint8).tobytes()
        try:
            parse_frame(data, 32, 32)
        except BitstreamError:
            pass
        try:
            decode_frame(data, 32, 32)
        except BitstreamError:
            pass

# ============================================================================
# CODEWORD MAP
# ============================================================================

def test_codeword_map_classes(dct_svc):
    cmap = codeword_map(dct_svc.records[0].video_payload, 32, 32)
    counts = cmap.class_bit_counts()
    assert counts['INTRA_DC_SUFFIX'] > 0
    assert counts['SIGN_INTRA_DC'] > 0
    assert counts['MVD_SUFFIX'] == 0
    assert counts['INTER_DC_SUFFIX'] == 0
    assert cmap.total_encryptable_bits == sum(counts.values())


def test_rewriting_codeword_bits_keeps_syntax(dct_svc):
    rng = np.random.default_rng(3)
    width, height = dct_svc.header.width, dct_svc.header.height
    for record in dct_svc.records:
        frame, cmap = parse_frame(record.video_payload, width, height)
        positions = cmap.bit_positions(ALL_CLASSES)
        patched = patch_bits_at(record.video_payload, positions, rng.integers(0, 2, size=positions.size))
        patched_frame, patched_map = parse_frame(patched, width, height)
        assert len(patched) == len(record.video_payload)
        assert [u.bit_length for u in patched_frame.units] == [u.bit_length for u in frame.units]
        assert np.array_equal(patched_map.bit_positions(ALL_CLASSES), positions)
        decode_frame(patched, width, height, np.full((height, width), 128, dtype=np.uint8))


def test_unit_limit_restricts_positions(dct_svc):
    cmap = codeword_map(dct_svc.records[0].video_payload, 32, 32)
    everything = cmap.bit_positions(ALL_CLASSES)
    first_unit = cmap.bit_positions(ALL_CLASSES, unit_limit=1)
    assert 0 < first_unit.size < everything.size
    assert cmap.bit_positions(ALL_CLASSES, unit_limit=0).size == 0


def test_patch_bits_length_mismatch(dct_svc):
    payload = dct_svc.records[0].video_payload
    with pytest.raises(CodecError, match='bit-length mismatch'):
        patch_bits_at(payload, np.array([0, 1, 2]), [1, 0])


def test_class_groups():
    assert parse_class_groups('all') == ALL_CLASSES
    assert parse_class_groups('dc,mvd') == CLASS_GROUPS['dc'] | CLASS_GROUPS['mvd']
    assert CodewordClass.SIGN_AC in parse_class_groups('signs')
    with pytest.raises(ValueError):
        parse_class_groups('chroma')


def test_tolerant_decode_reports_failures(dct_svc):
    payloads = [r.video_payload for r in dct_svc.records]
    payloads[2] = b'\xff\xff'
    results = decode_video_tolerant(payloads, 32, 32)
    assert results[2][0] is None and results[2][1]
    assert all(frame is not None for frame, _ in results[:2])
    with pytest.raises(BitstreamError, match='frame 2'):
        decode_video(payloads, 32, 32)


def test_sensitive_bits_round_trip(dct_svc):
    payload = dct_svc.records[0].video_payload
    signs = CLASS_GROUPS['signs']
    bits = extract_sensitive_bits(payload, signs, 32, 32)
    assert bits.size == codeword_map(payload, 32, 32).bit_positions(signs).size
    assert patch_sensitive_bits(payload, signs, bits, 32, 32) == payload

    flipped = patch_sensitive_bits(payload, signs, 1 - bits, 32, 32)
    assert len(flipped) == len(payload) and flipped != payload
    assert np.array_equal(extract_sensitive_bits(flipped, signs, 32, 32), 1 - bits)
