"""
Metrics Module Package

This package contains the performance measurements:
- PSNR, encryption ratio, compliance, key sensitivity (metrics_quality)
- Stage timing bench (metrics_bench)
- Scheme comparison table and its exports (metrics_compare)
"""

from .metrics_quality import (
    PSNR_INF, psnr, mean_psnr, decoded_frames, encryption_ratio, compliance_check,
    MetricsReport, measure, key_sensitivity, payload_difference, audio_displacement
)
from .metrics_bench import bench, format_bench_table, bench_to_dict, REFERENCE_LINE
from .metrics_compare import (
    CSV_COLUMNS, compare, summarize, compare_to_csv, compare_to_text, compare_to_json, compare_to_xlsx
)

__all__ = [
    'PSNR_INF', 'psnr', 'mean_psnr', 'decoded_frames', 'encryption_ratio', 'compliance_check',
    'MetricsReport', 'measure', 'key_sensitivity', 'payload_difference', 'audio_displacement',
    'bench', 'format_bench_table', 'bench_to_dict', 'REFERENCE_LINE',
    'CSV_COLUMNS', 'compare', 'summarize', 'compare_to_csv', 'compare_to_text', 'compare_to_json',
    'compare_to_xlsx'
]
