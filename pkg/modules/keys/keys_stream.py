# modules/keys/keys_stream.py
"""
AES-128-CTR keystreams separated by domain tag

Counter block = the first 16 bytes of the zero-padded domain tag, with the
last 4 bytes replaced by a big-endian block counter starting at 0.
"""

from typing import Iterator

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

SEED_BYTES = 16
BLOCK_BYTES = 16
COUNTER_BYTES = 4


def counter_block(domain_tag: bytes) -> bytes:
    tag = bytes(domain_tag)[:BLOCK_BYTES].ljust(BLOCK_BYTES, b'\x00')
    return tag[:BLOCK_BYTES - COUNTER_BYTES] + bytes(COUNTER_BYTES)


def keyed_stream(seed: bytes, domain_tag: bytes, length: int) -> bytes:
    """Deterministic keystream of the given length"""
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
    if length < 0:
        raise ValueError("negative keystream length")
    if length == 0:
        return b''
    encryptor = Cipher(algorithms.AES(bytes(seed)), modes.CTR(counter_block(domain_tag))).encryptor()
    return encryptor.update(b'\x00' * length) + encryptor.finalize()


def frame_tag(prefix: bytes, index: int) -> bytes:
    """prefix followed by a 4-byte big-endian frame or block index"""
    return bytes(prefix) + int(index).to_bytes(4, 'big')


def keystream_chunks(seed: bytes, domain_tag: bytes, chunk_size: int = 1024) -> Iterator[bytes]:
    """Endless keystream in fixed-size chunks; the concatenation equals keyed_stream"""
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
    encryptor = Cipher(algorithms.AES(bytes(seed)), modes.CTR(counter_block(domain_tag))).encryptor()
    zeros = b'\x00' * chunk_size
    while True:
        yield encryptor.update(zeros)
