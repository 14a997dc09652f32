# ============================================================================
# components/file_operations.py - Whole-file reads and atomic writes
# ============================================================================

"""
File operations shared by the command line subcommands

Outputs go to a temporary file in the destination directory and are renamed
into place only once fully written, so no partial file is ever visible.
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Union

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

def read_file_bytes(path: PathLike) -> bytes:
    """Read a whole file"""
    with open(path, 'rb') as handle:
        return handle.read()

def atomic_write_bytes(path: PathLike, data: bytes) -> None:
    """Write data to path via a temporary sibling and os.replace"""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    
    with tempfile.NamedTemporaryFile(dir=directory, prefix=f'.{target.name}.', suffix='.tmp',
                                     delete=False) as temp_file:
        temp_path = temp_file.name
        try:
            temp_file.write(data)
            temp_file.flush()
            os.fsync(temp_file.fileno())
        except Exception:
            temp_file.close()
            _remove_quietly(temp_path)
            raise
    
    try:
        os.replace(temp_path, target)
    except Exception:
        _remove_quietly(temp_path)
        raise
    
    logger.debug(f"Wrote {len(data)} bytes to {target}")

def same_path(first: PathLike, second: PathLike) -> bool:
    """True when both paths resolve to the same location"""
    return Path(first).resolve() == Path(second).resolve()

def _remove_quietly(path: str) -> None:
    try:
        os.unlink(path)
    except OSError as cleanup_error:
        logger.warning(f"Failed to clean up temp file: {cleanup_error}")
