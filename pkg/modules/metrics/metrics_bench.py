# modules/metrics/metrics_bench.py
"""
Stage timing bench

One warm-up encryption is discarded, then the median of the timed runs is
reported per stage. Runs are strictly sequential.
"""

import logging
from dataclasses import replace
from typing import Any, Dict, Optional

import pandas as pd

from components.stage_timing import STAGE_LABELS
from modules.container.svc_format import SvcFile
from modules.keys.keys_wrap import MasterKey
from modules.schemes.scheme_coordinator import SchemeCoordinator
from modules.schemes.scheme_types import SchemeParams

logger = logging.getLogger(__name__)

REFERENCE_LINE = "reference: 3999 ms for a 108 s video (~3.7% of duration)"


def bench(scheme: str, svc: SvcFile, master: MasterKey, params: Optional[SchemeParams] = None,
          runs: int = 5) -> Dict[str, Any]:
    """
    Time the four pipeline stages of one scheme

    Returns {'success', 'scheme', 'runs', 'table', 'total_ms', 'duration_s',
    'percent_of_duration', 'aes_bits'}; 'table' is a DataFrame with one row per
    stage label.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    params = replace(params or SchemeParams(), scheme=scheme)

    coordinator = SchemeCoordinator()
    coordinator.encrypt(svc, master, params)

    timings = []
    aes_bits = 0
    for run in range(runs):
        _, report = coordinator.encrypt(svc, master, params)
        timings.append({stage: seconds * 1000.0 for stage, seconds in report.stage_timings.items()})
        aes_bits = report.aes_bits
        logger.debug(f"Bench run {run + 1}/{runs}: {sum(timings[-1].values()):.2f} ms")

    medians = pd.DataFrame(timings).median()
    table = pd.DataFrame({
        'Task': [STAGE_LABELS[stage] for stage in STAGE_LABELS],
        'Time (ms)': [float(medians[stage]) for stage in STAGE_LABELS]
    })
    total_ms = float(table['Time (ms)'].sum())
    duration_s = svc.frame_count * svc.header.fps_den / svc.header.fps_num

    return {
        'success': True,
        'scheme': scheme,
        'runs': runs,
        'table': table,
        'total_ms': total_ms,
        'duration_s': duration_s,
        'percent_of_duration': 100.0 * total_ms / (duration_s * 1000.0) if duration_s else 0.0,
        'aes_bits': aes_bits
    }


def format_bench_table(result: Dict[str, Any]) -> str:
    """Aligned text table ending with the total and the reference line"""
    table = result['table']
    width = max(len(label) for label in table['Task'])
    lines = [f"{'Task':<{width}}  {'Time (ms)':>10}"]
    for task, ms in zip(table['Task'], table['Time (ms)']):
        lines.append(f"{task:<{width}}  {ms:>10.3f}")
    lines.append(f"{'Total':<{width}}  {result['total_ms']:>10.3f}")
    lines.append(f"measured: {result['total_ms']:.1f} ms for a {result['duration_s']:.2f} s video "
                 f"(~{result['percent_of_duration']:.1f}% of duration)")
    lines.append(REFERENCE_LINE)
    return '\n'.join(lines)


def bench_to_dict(result: Dict[str, Any]) -> Dict[str, Any]:
    """JSON-ready copy of a bench result"""
    out = {key: value for key, value in result.items() if key != 'table'}
    out['stages'] = dict(zip(result['table']['Task'], (float(v) for v in result['table']['Time (ms)'])))
    out['reference'] = REFERENCE_LINE
    return out
