# modules/container/svc_corpus.py
"""
Deterministic synthetic desk corpus

Natural-looking grayscale clips (wide smooth gradients, moving shapes,
per-frame sensor noise) and an optional sine-plus-noise PCM track, generated
from a seed.
"""

from typing import List, Optional, Tuple

import numpy as np

from .svc_media import AudioTrack, RawVideo

AUDIO_SAMPLE_RATE = 8000
# Per-frame noise standard deviation; noiseless content spans 25..230
SENSOR_NOISE = 6.0

# (name, width, height, frames, with_audio)
CORPUS_CLIPS = [
    ('gradient_64', 64, 64, 16, True),
    ('pan_64', 64, 64, 24, False),
    ('wide_96x64', 96, 64, 16, True),
    ('tall_64x96', 64, 96, 20, False),
    ('square_96', 96, 96, 16, True),
    ('long_64', 64, 64, 32, False),
    ('wide_128x64', 128, 64, 16, True),
    ('large_128', 128, 128, 16, False)
]


def synthetic_clip(seed: int, width: int = 64, height: int = 64, frames: int = 16,
                   with_audio: bool = False, fps: Tuple[int, int] = (25, 1)) -> Tuple[RawVideo, Optional[AudioTrack]]:
    """Generate one clip; identical arguments give identical output"""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)

    angle = rng.uniform(0, 2 * np.pi)
    direction = np.cos(angle) * xx / width + np.sin(angle) * yy / height
    ripple_x, ripple_y = rng.uniform(1.0, 2.5, size=2)
    drift = rng.uniform(-1.5, 1.5, size=2)

    shapes = []
    for _ in range(3):
        shapes.append({
            'cx': rng.uniform(0.2, 0.8) * width,
            'cy': rng.uniform(0.2, 0.8) * height,
            'vx': rng.uniform(-2.0, 2.0),
            'vy': rng.uniform(-2.0, 2.0),
            'radius': rng.uniform(0.1, 0.22) * min(width, height),
            'level': rng.choice([45.0, 210.0]) + rng.uniform(-10, 10)
        })

    planes = []
    for t in range(frames):
        shift_x = xx - drift[0] * t
        shift_y = yy - drift[1] * t
        base = (45.0 + 165.0 * (0.5 + 0.5 * np.cos(np.pi * direction))
                + 20.0 * np.sin(2 * np.pi * (ripple_x * shift_x / width + ripple_y * shift_y / height)))
        for shape in shapes:
            cx = (shape['cx'] + shape['vx'] * t) % width
            cy = (shape['cy'] + shape['vy'] * t) % height
            inside = (xx - cx) ** 2 + (yy - cy) ** 2 <= shape['radius'] ** 2
            base = np.where(inside, shape['level'] + 10.0 * np.sin(xx / 3.0 + t), base)
        noisy = base + rng.normal(0.0, SENSOR_NOISE, size=base.shape)
        planes.append(np.clip(np.rint(noisy), 0, 255).astype(np.uint8))

    video = RawVideo.from_arrays(planes, fps)

    audio = None
    if with_audio:
        t = np.arange(AUDIO_SAMPLE_RATE) / AUDIO_SAMPLE_RATE
        tone = rng.uniform(220.0, 880.0)
        signal = 9000.0 * np.sin(2 * np.pi * tone * t) + rng.normal(0.0, 600.0, size=t.shape)
        audio = AudioTrack.from_samples(AUDIO_SAMPLE_RATE, np.clip(np.rint(signal), -32768, 32767))

    return video, audio


def synthetic_corpus(seed: int = 2024) -> List[Tuple[str, RawVideo, Optional[AudioTrack]]]:
    """The eight-clip desk corpus as (name, video, audio) triples"""
    corpus = []
    for offset, (name, width, height, frames, with_audio) in enumerate(CORPUS_CLIPS):
        video, audio = synthetic_clip(seed + offset, width, height, frames, with_audio)
        corpus.append((name, video, audio))
    return corpus
