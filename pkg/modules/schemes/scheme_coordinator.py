# modules/schemes/scheme_coordinator.py
"""
Scheme coordinator

Dispatches encrypt/decrypt to the scheme implementations, wraps the shuffle key
into the header and fills in the SchemeReport. Key blob layout: 72-byte
AES-GCM wrapped shuffle key followed by the 6-byte scheme parameter record,
which is authenticated together with the scheme id.
"""

import logging
from typing import Callable, Dict, Optional, Tuple, Union

from components.stage_timing import StageTimer
from modules.container.svc_format import CODEC_NAMES, FLAG_ENCRYPTED, SvcFile, serialize_svc
from modules.keys.keys_wrap import (
    KEY_BLOB_BYTES, MasterKey, ShuffleKey, unwrap_shuffle_key, wrap_shuffle_key
)
from modules.shared.errors import SchemeError, WrongKeyError
from .scheme_baseline import (
    decrypt_choose, decrypt_full, decrypt_pure, encrypt_choose, encrypt_full, encrypt_pure
)
from .scheme_config import SCHEMES, get_scheme_by_id, resolve_scheme
from .scheme_crisscross import decrypt_crisscross, encrypt_crisscross
from .scheme_perceptual import decrypt_perceptual, encrypt_perceptual
from .scheme_proposed import decrypt_proposed, encrypt_proposed
from .scheme_types import PARAMS_STRUCT, SchemeParams, SchemeReport

logger = logging.getLogger(__name__)

SCHEME_HANDLERS: Dict[str, Tuple[Callable, Callable]] = {
    'proposed': (encrypt_proposed, decrypt_proposed),
    'full': (encrypt_full, decrypt_full),
    'pure': (encrypt_pure, decrypt_pure),
    'crisscross': (encrypt_crisscross, decrypt_crisscross),
    'choose': (encrypt_choose, decrypt_choose),
    'perceptual': (encrypt_perceptual, decrypt_perceptual)
}


def _associated_data(scheme_id: int, params_record: bytes) -> bytes:
    return bytes([scheme_id]) + params_record


class SchemeCoordinator:
    """Single entry point for all encryption schemes"""

    def __init__(self, workers: int = 1):
        self.logger = logging.getLogger(__name__ + '.SchemeCoordinator')
        self.workers = max(1, int(workers))

    def encrypt(self, svc: SvcFile, master: MasterKey, params: Optional[SchemeParams] = None,
                shuffle_key: Optional[ShuffleKey] = None,
                progress_callback: Optional[Callable] = None) -> Tuple[SvcFile, SchemeReport]:
        """
        Encrypt a container with the scheme named in params

        Args:
            svc: Unencrypted container
            master: Key that seals the shuffle key
            params: Scheme and its parameters (default: proposed, all codeword classes)
            shuffle_key: Fixed shuffle key; a fresh random one when omitted
            progress_callback: Called with status dictionaries

        Returns:
            (encrypted container, SchemeReport)
        """
        params = (params or SchemeParams()).validate()
        scheme = SCHEMES[params.scheme]

        if svc.header.encrypted:
            raise SchemeError("input is already encrypted")
        codec_name = CODEC_NAMES[svc.header.codec_id]
        if codec_name not in scheme['codecs']:
            raise SchemeError(f"scheme '{params.scheme}' requires codec {'/'.join(scheme['codecs'])}, "
                              f"file is {codec_name}")

        self.logger.info(f"Encrypting {svc.frame_count} frames with scheme '{params.scheme}'")
        if progress_callback:
            progress_callback({'status': 'encrypting', 'scheme': params.scheme, 'frames': svc.frame_count})

        shuffle_key = shuffle_key or ShuffleKey.generate()
        timer = StageTimer()
        encrypt_handler, _ = SCHEME_HANDLERS[params.scheme]
        outcome = encrypt_handler(svc, shuffle_key, params, timer, self.workers)

        params_record = params.to_bytes()
        with timer.stage('aes'):
            blob = wrap_shuffle_key(master, shuffle_key, _associated_data(scheme['scheme_id'], params_record))

        encrypted = svc.with_records(outcome.records).with_header(
            scheme_id=scheme['scheme_id'],
            flags=svc.header.flags | FLAG_ENCRYPTED,
            key_blob=blob + params_record
        )

        report = SchemeReport(
            scheme=params.scheme,
            frames=svc.frame_count,
            bytes_touched=outcome.bytes_touched,
            total_payload_bytes=svc.total_video_bytes,
            aes_bits=outcome.aes_bits,
            original_file_bytes=len(serialize_svc(svc)),
            encrypted_file_bytes=len(serialize_svc(encrypted)),
            stage_timings=timer.snapshot()
        )

        self.logger.info(f"Scheme '{params.scheme}': {report.bytes_touched}/{report.total_payload_bytes} "
                         f"payload bytes touched, {report.aes_bits} bits through AES")
        if progress_callback:
            progress_callback({'status': 'completed', 'scheme': params.scheme, 'report': report.to_dict()})
        return encrypted, report

    def decrypt(self, svc: SvcFile, master: MasterKey,
                timer: Optional[StageTimer] = None) -> SvcFile:
        """Exact inverse of encrypt; the key blob is authenticated before any payload is touched"""
        header = svc.header
        if not header.encrypted:
            raise SchemeError("not encrypted")
        scheme = get_scheme_by_id(header.scheme_id)
        if scheme is None:
            raise SchemeError(f"unsupported scheme id {header.scheme_id}")

        blob = header.key_blob
        if len(blob) != KEY_BLOB_BYTES + PARAMS_STRUCT.size:
            self.logger.error(f"Key blob has unexpected length {len(blob)}")
            raise WrongKeyError()
        params_record = blob[KEY_BLOB_BYTES:]
        shuffle_key = unwrap_shuffle_key(master, blob[:KEY_BLOB_BYTES],
                                         _associated_data(header.scheme_id, params_record))
        params = SchemeParams.from_bytes(scheme['name'], params_record)

        codec_name = CODEC_NAMES[header.codec_id]
        if codec_name not in scheme['codecs']:
            raise SchemeError(f"scheme '{scheme['name']}' cannot carry {codec_name} payloads")

        self.logger.info(f"Decrypting {svc.frame_count} frames of scheme '{scheme['name']}'")
        _, decrypt_handler = SCHEME_HANDLERS[scheme['name']]
        records = decrypt_handler(svc, shuffle_key, params, timer or StageTimer(), self.workers)

        return svc.with_records(records).with_header(scheme_id=0, flags=0, key_blob=b'')


# ============================================================================
# MODULE-LEVEL CONVENIENCE
# ============================================================================

def encrypt(svc: SvcFile, master: MasterKey, params: Optional[SchemeParams] = None,
            shuffle_key: Optional[ShuffleKey] = None, workers: int = 1) -> Tuple[SvcFile, SchemeReport]:
    return SchemeCoordinator(workers).encrypt(svc, master, params, shuffle_key)


def decrypt(svc: SvcFile, master: MasterKey, workers: int = 1) -> SvcFile:
    return SchemeCoordinator(workers).decrypt(svc, master)


def classify(scheme: Union[str, int]) -> str:
    """Taxonomy label of a scheme given by name or container id"""
    try:
        return resolve_scheme(scheme)['taxonomy']
    except KeyError as e:
        raise SchemeError(f"unknown scheme {scheme!r}") from e
