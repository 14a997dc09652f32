# modules/keys/keys_permutation.py
"""
Keyed permutations

Fisher-Yates over 0..n-1 for i = n-1 down to 1, each swap index drawn from
32-bit big-endian keystream words with rejection sampling.
"""

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

import numpy as np

from .keys_stream import keystream_chunks

WORD_BYTES = 4
CHUNK_WORDS = 256


@dataclass(frozen=True)
class Permutation:
    """mapping[i] = destination of source index i"""
    mapping: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("mapping is not a bijection")

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __len__(self) -> int:
        return len(self.mapping)

    def __getitem__(self, index: int) -> int:
        return self.mapping[index]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.mapping, dtype=np.intp)

    def apply(self, items: Sequence) -> list:
        """out[mapping[i]] = items[i]"""
        if len(items) != self.n:
            raise ValueError(f"permutation of {self.n} applied to {len(items)} items")
        out = [None] * self.n
        for source, destination in enumerate(self.mapping):
            out[destination] = items[source]
        return out

    def apply_array(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values)
        out = np.empty_like(values)
        out[self.as_array()] = values
        return out


def _keystream_words(seed: bytes, domain_tag: bytes) -> Iterator[int]:
    for chunk in keystream_chunks(seed, domain_tag, CHUNK_WORDS * WORD_BYTES):
        for offset in range(0, len(chunk), WORD_BYTES):
            yield int.from_bytes(chunk[offset:offset + WORD_BYTES], 'big')


def derive_permutation(seed: bytes, domain_tag: bytes, n: int) -> Permutation:
    if n < 1:
        raise ValueError("empty domain")

    words = _keystream_words(seed, domain_tag)
    array = list(range(n))
    for i in range(n - 1, 0, -1):
        bound = i + 1
        limit = ((1 << 32) // bound) * bound
        word = next(words)
        while word >= limit:
            word = next(words)
        j = word % bound
        array[i], array[j] = array[j], array[i]
    return Permutation(tuple(array))


def invert_permutation(permutation: Permutation) -> Permutation:
    inverse = [0] * permutation.n
    for source, destination in enumerate(permutation.mapping):
        inverse[destination] = source
    return Permutation(tuple(inverse))


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(n)))
