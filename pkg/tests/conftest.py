# conftest.py
"""
Shared fixtures: one small synthetic clip in both codecs and a fixed key pair
"""

import pytest

from modules.codec.codec_video import build_svc
from modules.container.svc_corpus import synthetic_clip, synthetic_corpus
from modules.keys.keys_wrap import MasterKey, ShuffleKey

MASTER_HEX = '000102030405060708090a0b0c0d0e0f'


@pytest.fixture(scope='session')
def small_clip():
    """32x32, 6 frames, 1 s of audio"""
    return synthetic_clip(7, 32, 32, 6, with_audio=True)


@pytest.fixture(scope='session')
def dct_svc(small_clip):
    video, audio = small_clip
    return build_svc(video, audio, 'DCT', qp=4, gop=4)


@pytest.fixture(scope='session')
def raw_svc(small_clip):
    video, audio = small_clip
    return build_svc(video, audio, 'RAW')


@pytest.fixture
def master():
    return MasterKey.from_hex(MASTER_HEX)


@pytest.fixture
def shuffle_key():
    return ShuffleKey.from_bytes(bytes(range(44)))


@pytest.fixture(scope='session')
def corpus_dct():
    """The desk corpus as DCT containers, qp 4, gop 8"""
    return [(name, video, build_svc(video, audio, 'DCT', qp=4, gop=8))
            for name, video, audio in synthetic_corpus()]
