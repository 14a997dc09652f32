# ============================================================================
# components/stage_timing.py - Stage timing for encryption pipelines
# ============================================================================

"""
Stage timing for encryption and decryption runs (monotonic clock)
"""

import time
from contextlib import contextmanager
from typing import Dict, Iterator

# Stage keys and their table labels, in pipeline order
STAGE_LABELS = {
    'shredding': 'Video Shredding',
    'shuffling': 'Shuffling',
    'stitching': 'Video Stitching',
    'aes': 'AES Encryption'
}

class StageTimer:
    """Accumulates elapsed seconds per pipeline stage"""
    
    def __init__(self):
        self.timings = {stage: 0.0 for stage in STAGE_LABELS}
    
    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time the enclosed block and add it to the named stage"""
        if name not in self.timings:
            raise ValueError(f"Unknown stage: {name}")
        
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] += time.perf_counter() - start
    
    def snapshot(self) -> Dict[str, float]:
        """Copy of the current per-stage totals"""
        return dict(self.timings)
    
    def total(self) -> float:
        return sum(self.timings.values())
