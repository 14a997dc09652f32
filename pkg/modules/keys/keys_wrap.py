# modules/keys/keys_wrap.py
"""
Master key and shuffle key handling

The shuffle key (frame seed, block seed, stream nonce) is generated fresh for
every encryption and travels inside the file, sealed with AES-GCM under the
master key. The master key never leaves the caller.
"""

import logging
import os
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from modules.shared.errors import UsageError, WrongKeyError

logger = logging.getLogger(__name__)

MASTER_KEY_LENGTHS = (16, 24, 32)
SHUFFLE_KEY_BYTES = 44
GCM_NONCE_BYTES = 12
GCM_TAG_BYTES = 16
KEY_BLOB_BYTES = GCM_NONCE_BYTES + SHUFFLE_KEY_BYTES + GCM_TAG_BYTES
# Prefix of the authenticated associated data
KEY_BLOB_AAD = b'svcrypt shuffle key v1'


@dataclass(frozen=True)
class MasterKey:
    material: bytes

    def __post_init__(self):
        if len(self.material) not in MASTER_KEY_LENGTHS:
            raise UsageError(f"master key must be 16, 24 or 32 bytes, got {len(self.material)}")

    def __repr__(self) -> str:
        return f"MasterKey(<{len(self.material) * 8} bits>)"

    @property
    def bits(self) -> int:
        return len(self.material) * 8

    @classmethod
    def from_hex(cls, text: str) -> 'MasterKey':
        cleaned = (text or '').strip()
        if len(cleaned) not in (32, 48, 64):
            raise UsageError("master key must be 32, 48 or 64 hex characters")
        try:
            return cls(bytes.fromhex(cleaned))
        except ValueError:
            raise UsageError("master key is not valid hex")

    @classmethod
    def generate(cls, length: int = 16) -> 'MasterKey':
        return cls(os.urandom(length))


@dataclass(frozen=True)
class ShuffleKey:
    frame_seed: bytes
    block_seed: bytes
    stream_nonce: bytes

    def __post_init__(self):
        if len(self.frame_seed) != 16 or len(self.block_seed) != 16 or len(self.stream_nonce) != 12:
            raise ValueError("shuffle key fields must be 16, 16 and 12 bytes")

    def __repr__(self) -> str:
        return "ShuffleKey(<secret>)"

    def to_bytes(self) -> bytes:
        return self.frame_seed + self.block_seed + self.stream_nonce

    @classmethod
    def from_bytes(cls, data: bytes) -> 'ShuffleKey':
        if len(data) != SHUFFLE_KEY_BYTES:
            raise ValueError(f"shuffle key must be {SHUFFLE_KEY_BYTES} bytes")
        return cls(bytes(data[:16]), bytes(data[16:32]), bytes(data[32:44]))

    @classmethod
    def generate(cls) -> 'ShuffleKey':
        return cls.from_bytes(os.urandom(SHUFFLE_KEY_BYTES))


def wrap_shuffle_key(master: MasterKey, shuffle: ShuffleKey, associated_data: bytes = b'') -> bytes:
    """
    nonce || AES-GCM(ciphertext || tag)

    associated_data is authenticated but not encrypted; unwrap must be given
    the same bytes.
    """
    nonce = os.urandom(GCM_NONCE_BYTES)
    sealed = AESGCM(master.material).encrypt(nonce, shuffle.to_bytes(), KEY_BLOB_AAD + associated_data)
    return nonce + sealed


def unwrap_shuffle_key(master: MasterKey, blob: bytes, associated_data: bytes = b'') -> ShuffleKey:
    if len(blob) != KEY_BLOB_BYTES:
        raise WrongKeyError()
    nonce, sealed = bytes(blob[:GCM_NONCE_BYTES]), bytes(blob[GCM_NONCE_BYTES:])
    try:
        plain = AESGCM(master.material).decrypt(nonce, sealed, KEY_BLOB_AAD + bytes(associated_data))
    except InvalidTag:
        logger.error("Key blob failed authentication")
        raise WrongKeyError()
    return ShuffleKey.from_bytes(plain)
