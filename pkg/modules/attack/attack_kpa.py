# modules/attack/attack_kpa.py
"""
Known-plaintext recovery of permutation ciphers

A permutation cipher places plain[i] at cipher[perm[i]]. Given plaintext and
ciphertext, source i can only map to destinations j holding the same value, so
every source and destination gets a label and i may map to j iff the labels
are equal. More known pairs refine the labels; a label shared by exactly one
source and one destination is an exact recovery.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from modules.codec.codec_syntax import EncodedFrame
from modules.shared.errors import AttackError

logger = logging.getLogger(__name__)


def _joint_labels(source_columns: np.ndarray, dest_columns: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Relabel rows so equal rows on either side share one integer label"""
    stacked = np.concatenate([source_columns, dest_columns], axis=0)
    _, inverse = np.unique(stacked, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    return inverse[:len(source_columns)], inverse[len(source_columns):]


@dataclass(frozen=True)
class PermutationClasses:
    """Candidate destinations per source index, as equality classes of labels"""
    source_labels: np.ndarray
    dest_labels: np.ndarray

    @property
    def n(self) -> int:
        return len(self.source_labels)

    def candidates(self, source_index: int) -> np.ndarray:
        return np.flatnonzero(self.dest_labels == self.source_labels[source_index])

    def class_sizes(self) -> np.ndarray:
        """Number of candidate destinations for every source index"""
        labels, counts = np.unique(self.dest_labels, return_counts=True)
        where = np.searchsorted(labels, self.source_labels)
        where = np.clip(where, 0, len(labels) - 1)
        found = labels[where] == self.source_labels
        return np.where(found, counts[where], 0)

    def singleton_mask(self) -> np.ndarray:
        return self.class_sizes() == 1

    @property
    def singleton_fraction(self) -> float:
        return float(self.singleton_mask().mean()) if self.n else 0.0

    @property
    def unique(self) -> bool:
        return bool(self.n) and bool(self.singleton_mask().all())

    def refine(self, other: 'PermutationClasses') -> 'PermutationClasses':
        """Intersect with the classes from another known pair"""
        if other.n != self.n:
            raise AttackError(f"class size mismatch: {self.n} vs {other.n}")
        source, dest = _joint_labels(
            np.stack([self.source_labels, other.source_labels], axis=1),
            np.stack([self.dest_labels, other.dest_labels], axis=1)
        )
        return PermutationClasses(source, dest)

    def minimum_candidates(self) -> np.ndarray:
        """Smallest candidate destination per source (-1 when none)"""
        order = np.argsort(self.dest_labels, kind='stable')
        labels, first = np.unique(self.dest_labels[order], return_index=True)
        result = np.full(self.n, -1, dtype=np.intp)
        if not len(labels):
            return result
        where = np.clip(np.searchsorted(labels, self.source_labels), 0, len(labels) - 1)
        found = labels[where] == self.source_labels
        result[found] = order[first[where[found]]]
        return result

    def best_guess(self) -> np.ndarray:
        """
        A full permutation consistent with the classes

        Inside every class, sources and destinations are paired in index order.
        """
        if not np.array_equal(np.sort(self.source_labels), np.sort(self.dest_labels)):
            raise AttackError("classes are not consistent with any permutation")
        indices = np.arange(self.n)
        sources = np.lexsort((indices, self.source_labels))
        dests = np.lexsort((indices, self.dest_labels))
        mapping = np.empty(self.n, dtype=np.intp)
        mapping[sources] = dests
        return mapping

    def contains(self, mapping: Sequence[int]) -> bool:
        """True when the given permutation is allowed by every class"""
        mapping = np.asarray(mapping)
        return bool(np.array_equal(self.source_labels, self.dest_labels[mapping]))

# ============================================================================
# BYTE PERMUTATION
# ============================================================================

def kpa_byte_permutation(plain: bytes, cipher: bytes) -> PermutationClasses:
    """Classes of a byte permutation from one plaintext/ciphertext pair"""
    if len(plain) != len(cipher):
        raise AttackError(f"length mismatch: {len(plain)} vs {len(cipher)} bytes")
    plain_values = np.frombuffer(bytes(plain), dtype=np.uint8)
    cipher_values = np.frombuffer(bytes(cipher), dtype=np.uint8)
    if not np.array_equal(np.bincount(plain_values, minlength=256), np.bincount(cipher_values, minlength=256)):
        raise AttackError("not a permutation pair: byte multisets differ")
    return PermutationClasses(plain_values.astype(np.int64), cipher_values.astype(np.int64))


def refine_all(pairs: Sequence[Tuple[bytes, bytes]]) -> PermutationClasses:
    """Classes intersected over several known pairs"""
    if not pairs:
        raise AttackError("no known pairs")
    classes = kpa_byte_permutation(*pairs[0])
    for plain, cipher in pairs[1:]:
        classes = classes.refine(kpa_byte_permutation(plain, cipher))
    return classes


def apply_recovered(classes: PermutationClasses, cipher_frames: Sequence[bytes]) -> Tuple[List[bytes], float]:
    """
    Undo the permutation on ciphertext frames

    Singleton sources are placed exactly; ambiguous ones take the byte at the
    smallest candidate destination. recovery_rate is the singleton fraction.
    """
    sources = classes.minimum_candidates()
    fill = np.where(sources < 0, 0, sources)
    frames = []
    for cipher in cipher_frames:
        if len(cipher) != classes.n:
            raise AttackError(f"frame of {len(cipher)} bytes for classes over {classes.n}")
        values = np.frombuffer(bytes(cipher), dtype=np.uint8)
        frames.append(values[fill].tobytes())
    return frames, classes.singleton_fraction

# ============================================================================
# COEFFICIENT PERMUTATION
# ============================================================================

def block_levels(frames: Sequence[EncodedFrame]) -> np.ndarray:
    """All blocks of all frames as a (blocks, 64) level matrix"""
    rows = [levels for frame in frames for unit in frame.units for levels in unit.blocks]
    if not rows:
        return np.zeros((0, 64), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def kpa_coefficient_permutation(plain_levels: np.ndarray, cipher_levels: np.ndarray) -> PermutationClasses:
    """
    Classes of a 64-entry coefficient permutation

    Slot s may map to slot d iff the plaintext level at s equals the ciphertext
    level at d in every known block.
    """
    plain_levels = np.asarray(plain_levels, dtype=np.int64)
    cipher_levels = np.asarray(cipher_levels, dtype=np.int64)
    if plain_levels.shape != cipher_levels.shape or plain_levels.ndim != 2 or plain_levels.shape[1] != 64:
        raise AttackError(f"block matrices do not line up: {plain_levels.shape} vs {cipher_levels.shape}")
    if plain_levels.shape[0] == 0:
        zeros = np.zeros(64, dtype=np.int64)
        return PermutationClasses(zeros, zeros.copy())
    source, dest = _joint_labels(plain_levels.T, cipher_levels.T)
    classes = PermutationClasses(source, dest)
    logger.debug(f"Coefficient classes from {plain_levels.shape[0]} blocks: "
                 f"{int(classes.singleton_mask().sum())}/64 singletons")
    return classes
