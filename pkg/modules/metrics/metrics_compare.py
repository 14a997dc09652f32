# modules/metrics/metrics_compare.py
"""
Scheme comparison table

Runs every scheme over a corpus, measures ratios, PSNR, compliance and
known-plaintext recovery, and exports the table as CSV, text, JSON or Excel.
"""

import io
import json
import logging
import math
from dataclasses import replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from modules.attack import attack_runner  # module reference: attack_runner imports this package
from modules.codec.codec_video import build_svc
from modules.container.svc_format import SvcFile
from modules.container.svc_media import AudioTrack, RawVideo
from modules.keys.keys_wrap import MasterKey, ShuffleKey
from modules.schemes.scheme_config import SCHEMES
from modules.schemes.scheme_coordinator import SchemeCoordinator
from modules.schemes.scheme_proposed import frame_positions
from modules.schemes.scheme_types import SchemeParams
from modules.shared.errors import SvcryptError
from .metrics_quality import measure

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['scheme', 'er_touched', 'er_size', 'psnr_db', 'compliant', 'kpa_recovery',
               'ms_shred', 'ms_shuffle', 'ms_stitch', 'ms_aes']
TEXT_COLUMNS = CSV_COLUMNS[:4] + ['size_change'] + CSV_COLUMNS[4:]
STAGE_COLUMNS = {'shredding': 'ms_shred', 'shuffling': 'ms_shuffle', 'stitching': 'ms_stitch', 'aes': 'ms_aes'}

CorpusEntry = Tuple[str, RawVideo, Optional[AudioTrack]]


def _kpa_recovery(scheme: str, raw: RawVideo, plain: SvcFile, encrypted: SvcFile, shuffle_key: ShuffleKey,
                  qp: int, gop: int, known_frames: int, coefficient_known_frames: int) -> float:
    if scheme == 'crisscross':
        report = attack_runner.run_coefficient_kpa(raw, encrypted, qp, gop, min(coefficient_known_frames, raw.frame_count))
    else:
        positions = None
        if SCHEMES[scheme]['shuffles_frames']:
            positions = frame_positions(shuffle_key, plain.frame_count)
        report = attack_runner.run_byte_kpa(plain, encrypted, min(known_frames, plain.frame_count - 1),
                              frame_positions=positions)
    return 0.0 if report['precondition_failed'] else float(report['recovery_rate'])


def _clip_row(scheme: str, name: str, raw: RawVideo, plain: SvcFile,
              coordinator: SchemeCoordinator, master: MasterKey, params: SchemeParams,
              qp: int, gop: int, known_frames: int, coefficient_known_frames: int) -> Dict[str, Any]:
    shuffle_key = ShuffleKey.generate()
    encrypted, report = coordinator.encrypt(plain, master, params, shuffle_key)
    metrics = measure(plain, encrypted, report)
    # lengths compared as multisets: records may be reordered
    size_changed = (sorted(len(r.video_payload) for r in plain.records)
                    != sorted(len(r.video_payload) for r in encrypted.records))
    row = {
        'scheme': scheme,
        'clip': name,
        'er_touched': metrics.er_touched,
        'er_size': metrics.er_size,
        'psnr_db': metrics.psnr_encrypted_db,
        'compliant': metrics.compliant,
        'kpa_recovery': _kpa_recovery(scheme, raw, plain, encrypted, shuffle_key, qp, gop,
                                      known_frames, coefficient_known_frames),
        'size_changed': size_changed,
        'aes_bits': report.aes_bits
    }
    for stage, column in STAGE_COLUMNS.items():
        row[column] = report.stage_timings.get(stage, 0.0) * 1000.0
    return row


def compare(schemes: Sequence[str], corpus: Sequence[CorpusEntry], master: Optional[MasterKey] = None,
            qp: int = 4, gop: int = 8, known_frames: int = 5, coefficient_known_frames: int = 4,
            params: Optional[SchemeParams] = None) -> Dict[str, Any]:
    """
    Compare schemes over a corpus

    Returns {'success', 'table' (one row per scheme), 'clips' (one row per
    scheme and clip), 'errors'}. A clip that fails for one scheme is recorded
    in 'errors' and left out of that scheme's averages.
    """
    if not corpus:
        raise ValueError("empty corpus")
    unknown = [scheme for scheme in schemes if scheme not in SCHEMES]
    if unknown:
        raise ValueError(f"unknown schemes: {', '.join(unknown)}")

    master = master or MasterKey.generate()
    coordinator = SchemeCoordinator()
    base = params or SchemeParams()
    renditions: Dict[Tuple[str, str], SvcFile] = {}
    clip_rows: List[Dict[str, Any]] = []
    errors: List[Dict[str, str]] = []

    for scheme in schemes:
        codec = SCHEMES[scheme]['compare_codec']
        scheme_params = replace(base, scheme=scheme)
        for name, raw, audio in corpus:
            try:
                if (name, codec) not in renditions:
                    renditions[(name, codec)] = build_svc(raw, audio, codec, qp, gop)
                clip_rows.append(_clip_row(scheme, name, raw, renditions[(name, codec)], coordinator,
                                           master, scheme_params, qp, gop, known_frames, coefficient_known_frames))
            except (SvcryptError, ValueError) as e:
                message = getattr(e, 'message', str(e))
                logger.error(f"Compare: scheme '{scheme}' failed on clip '{name}': {message}")
                errors.append({'scheme': scheme, 'clip': name, 'error': message})
        logger.info(f"Compare: scheme '{scheme}' done on {len(corpus)} clips")

    clips = pd.DataFrame(clip_rows)
    table = summarize(clips, schemes) if not clips.empty else pd.DataFrame(columns=TEXT_COLUMNS)
    return {'success': not errors, 'table': table, 'clips': clips, 'errors': errors}


def _mean_psnr(values: pd.Series) -> float:
    finite = [value for value in values if not math.isinf(value)]
    return float(np.mean(finite)) if finite else math.inf


def summarize(clips: pd.DataFrame, schemes: Sequence[str]) -> pd.DataFrame:
    """Average the per-clip rows into one row per scheme, in the requested order"""
    rows = []
    for scheme in schemes:
        subset = clips[clips['scheme'] == scheme]
        if subset.empty:
            continue
        row = {
            'scheme': scheme,
            'er_touched': float(subset['er_touched'].mean()),
            'er_size': float(subset['er_size'].mean()),
            'psnr_db': _mean_psnr(subset['psnr_db']),
            'compliant': bool(subset['compliant'].all()),
            'size_change': 'changed' if subset['size_changed'].any() else 'unchanged',
            'kpa_recovery': float(subset['kpa_recovery'].mean())
        }
        for column in STAGE_COLUMNS.values():
            row[column] = float(subset[column].mean())
        rows.append(row)
    return pd.DataFrame(rows, columns=TEXT_COLUMNS)

# ============================================================================
# EXPORTS
# ============================================================================

def compare_to_csv(table: pd.DataFrame) -> str:
    return table[CSV_COLUMNS].to_csv(index=False, float_format='%.4f')


def compare_to_text(table: pd.DataFrame) -> str:
    return table[TEXT_COLUMNS].to_string(index=False, float_format=lambda value: f"{value:.3f}")


def compare_to_json(table: pd.DataFrame) -> str:
    records = []
    for record in table[TEXT_COLUMNS].to_dict(orient='records'):
        records.append({key: ('inf' if isinstance(value, float) and math.isinf(value) else value)
                        for key, value in record.items()})
    return json.dumps(records, indent=2)


def compare_to_xlsx(table: pd.DataFrame) -> bytes:
    """Excel workbook with a formatted header row"""
    from openpyxl import Workbook
    from openpyxl.styles import Alignment, Font, PatternFill
    from openpyxl.utils import get_column_letter

    wb = Workbook()
    ws = wb.active
    ws.title = "Comparison"

    for col, header in enumerate(TEXT_COLUMNS, 1):
        cell = ws.cell(row=1, column=col, value=header)
        cell.font = Font(bold=True)
        cell.fill = PatternFill(start_color="E6E6FA", end_color="E6E6FA", fill_type="solid")
        cell.alignment = Alignment(horizontal="center")

    for row, record in enumerate(table[TEXT_COLUMNS].to_dict(orient='records'), 2):
        for col, header in enumerate(TEXT_COLUMNS, 1):
            value = record[header]
            if isinstance(value, float) and math.isinf(value):
                value = 'inf'
            ws.cell(row=row, column=col, value=value)

    for col, header in enumerate(TEXT_COLUMNS, 1):
        column_letter = get_column_letter(col)
        ws.column_dimensions[column_letter].width = 14
        if header.startswith(('er_', 'psnr', 'kpa', 'ms_')):
            for row in range(2, len(table) + 2):
                ws[f"{column_letter}{row}"].number_format = '0.000'

    ws.auto_filter.ref = f"A1:{get_column_letter(len(TEXT_COLUMNS))}1"
    ws.freeze_panes = "A2"

    buffer = io.BytesIO()
    wb.save(buffer)
    return buffer.getvalue()
