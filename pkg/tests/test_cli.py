# test_cli.py
"""
End-to-end runs of the svcrypt command line
"""

import json
import logging

import pytest

from config import Config
from modules.cli import main, run
from modules.container.svc_format import read_svc
from modules.container.svc_media import write_pgm, write_wav

KEY = '000102030405060708090a0b0c0d0e0f'
OTHER_KEY = 'ff' * 16


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers = handlers
    root.setLevel(level)


@pytest.fixture
def clip_dir(tmp_path, small_clip):
    video, audio = small_clip
    folder = tmp_path / 'clip'
    folder.mkdir()
    for index in range(video.frame_count):
        write_pgm(folder / f"frame_{index:04d}.pgm", video.frame_array(index))
    write_wav(tmp_path / 'clip.wav', audio)
    return folder


@pytest.fixture
def encoded(tmp_path, clip_dir):
    target = tmp_path / 'clip.svc'
    code = run(['encode', '-i', str(clip_dir), '-o', str(target), '--audio', str(tmp_path / 'clip.wav'),
                '--gop', '4'])
    assert code == 0
    return target

# ============================================================================
# ENCODE, INSPECT, DECODE
# ============================================================================

def test_encode_writes_container(encoded):
    svc = read_svc(encoded)
    assert svc.frame_count == 6
    assert svc.header.width == 32 and svc.header.height == 32
    assert not svc.header.encrypted
    assert svc.total_audio_bytes > 0


def test_inspect_json(encoded, capsys):
    assert run(['inspect', '-i', str(encoded), '--format', 'json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['frame_count'] == 6
    assert report['codec'] == 'DCT'
    assert report['codewords']['unparsable_frames'] == 0
    assert len(report['index']) == 6


def test_decode_writes_frames(encoded, tmp_path):
    out_dir = tmp_path / 'frames'
    assert run(['decode', '-i', str(encoded), '-o', str(out_dir)]) == 0
    assert len(list(out_dir.glob('frame_*.pgm'))) == 6
    assert (out_dir / 'audio.wav').exists()

# ============================================================================
# ENCRYPT AND DECRYPT
# ============================================================================

@pytest.mark.parametrize('scheme', ['proposed', 'full', 'crisscross', 'perceptual'])
def test_encrypt_decrypt_restores_file(encoded, tmp_path, capsys, scheme):
    cipher = tmp_path / 'cipher.svc'
    restored = tmp_path / 'restored.svc'
    assert run(['encrypt', '-i', str(encoded), '-o', str(cipher), '--scheme', scheme,
                '--key', KEY, '--format', 'json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['scheme'] == scheme
    assert read_svc(cipher).header.encrypted

    assert run(['decrypt', '-i', str(cipher), '-o', str(restored), '--key', KEY]) == 0
    assert restored.read_bytes() == encoded.read_bytes()


def test_wrong_key_exit_code(encoded, tmp_path, capsys):
    cipher = tmp_path / 'cipher.svc'
    assert run(['encrypt', '-i', str(encoded), '-o', str(cipher), '--key', KEY]) == 0
    capsys.readouterr()
    code = run(['decrypt', '-i', str(cipher), '-o', str(tmp_path / 'out.svc'), '--key', OTHER_KEY])
    assert code == 3
    assert 'wrong key or corrupted blob' in capsys.readouterr().err
    assert not (tmp_path / 'out.svc').exists()


def test_key_from_environment(encoded, tmp_path, monkeypatch):
    monkeypatch.setattr(Config, 'MASTER_KEY_HEX', KEY)
    cipher = tmp_path / 'cipher.svc'
    assert run(['encrypt', '-i', str(encoded), '-o', str(cipher)]) == 0
    assert run(['decrypt', '-i', str(cipher), '-o', str(tmp_path / 'plain.svc'), '--key', KEY]) == 0


def test_missing_key_is_usage_error(encoded, tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(Config, 'MASTER_KEY_HEX', None)
    assert run(['encrypt', '-i', str(encoded), '-o', str(tmp_path / 'x.svc')]) == 1
    assert 'master key required' in capsys.readouterr().err


def test_decrypting_plain_file_fails(encoded, tmp_path):
    assert run(['decrypt', '-i', str(encoded), '-o', str(tmp_path / 'x.svc'), '--key', KEY]) == 2

# ============================================================================
# USAGE AND FORMAT ERRORS
# ============================================================================

@pytest.mark.parametrize('argv', [
    [],
    ['shred'],
    ['encrypt', '-i', 'a.svc'],
    ['encrypt', '-i', 'a.svc', '-o', 'b.svc', '--scheme', 'rot13'],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 1
    assert 'svcrypt: error:' in capsys.readouterr().err


def test_same_input_and_output(encoded):
    assert run(['encrypt', '-i', str(encoded), '-o', str(encoded), '--key', KEY]) == 1


def test_bad_scheme_params(encoded, tmp_path):
    argv = ['encrypt', '-i', str(encoded), '-o', str(tmp_path / 'x.svc'), '--key', KEY, '--scheme', 'choose']
    assert run(argv + ['--fraction', '0']) == 1
    assert run(argv + ['--classes', 'chroma']) == 1


def test_garbage_input(tmp_path, capsys):
    garbage = tmp_path / 'garbage.svc'
    garbage.write_bytes(b'not a container at all')
    assert run(['inspect', '-i', str(garbage)]) == 2
    assert capsys.readouterr().err.startswith('svcrypt: ')


def test_missing_input_file(tmp_path):
    assert run(['inspect', '-i', str(tmp_path / 'absent.svc')]) == 2


def test_help_exits_cleanly(capsys):
    assert run(['--help']) == 0
    assert 'encrypt' in capsys.readouterr().out

# ============================================================================
# ATTACK, BENCH, COMPARE
# ============================================================================

def test_attack_on_pure(clip_dir, tmp_path, capsys):
    plain = tmp_path / 'raw.svc'
    cipher = tmp_path / 'pure.svc'
    assert run(['encode', '-i', str(clip_dir), '-o', str(plain), '--codec', 'raw']) == 0
    assert run(['encrypt', '-i', str(plain), '-o', str(cipher), '--scheme', 'pure', '--key', KEY]) == 0
    capsys.readouterr()

    assert run(['attack', '--plain', str(plain), '--cipher', str(cipher), '--known-frames', '2']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['scheme'] == 'pure'
    assert 0.0 <= report['recovery_rate'] <= 1.0


def test_attack_default_known_frames(clip_dir, tmp_path, capsys):
    plain = tmp_path / 'raw.svc'
    cipher = tmp_path / 'pure.svc'
    assert run(['encode', '-i', str(clip_dir), '-o', str(plain), '--codec', 'raw']) == 0
    assert run(['encrypt', '-i', str(plain), '-o', str(cipher), '--scheme', 'pure', '--key', KEY]) == 0
    capsys.readouterr()

    assert run(['attack', '--plain', str(plain), '--cipher', str(cipher)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['known_frames'] == 5
    assert report['recovery_rate'] >= 0.95

    assert run(['attack', '--plain', str(plain), '--cipher', str(cipher), '--known-frames', '0']) == 2


def test_attack_needs_cipher(encoded):
    assert run(['attack', '--plain', str(encoded), '--cipher', str(encoded)]) == 2


def test_bench_json(encoded, capsys):
    assert run(['bench', '-i', str(encoded), '--key', KEY, '--runs', '1', '--format', 'json']) == 0
    result = json.loads(capsys.readouterr().out)
    assert set(result['stages']) == {'Video Shredding', 'Shuffling', 'Video Stitching', 'AES Encryption'}
    assert result['runs'] == 1


def test_compare_directory_corpus(clip_dir, tmp_path, capsys):
    corpus = tmp_path / 'corpus'
    corpus.mkdir()
    clip_dir.rename(corpus / 'clip')
    code = run(['compare', '--schemes', 'proposed,pure', '--corpus', str(corpus), '--key', KEY,
                '--gop', '4'])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith('scheme,er_touched,er_size,psnr_db,compliant')
    assert [line.split(',')[0] for line in lines[1:]] == ['proposed', 'pure']


def test_compare_xlsx_needs_output(capsys):
    assert run(['compare', '--format', 'xlsx']) == 1


def test_compare_empty_corpus(tmp_path):
    assert run(['compare', '--corpus', str(tmp_path), '--schemes', 'pure']) == 1


def test_main_exits_with_run_code(monkeypatch):
    monkeypatch.setattr('sys.argv', ['svcrypt', 'shred'])
    with pytest.raises(SystemExit) as exit_info:
        main()
    assert exit_info.value.code == 1
