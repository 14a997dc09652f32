# modules/cli/cli_commands.py
"""
Command line interface

Subcommands: encode, decode, encrypt, decrypt, attack, bench, compare, inspect.
Exit codes: 0 success, 1 usage error, 2 data or format error, 3 wrong key.
Reports go to stdout (or --output), diagnostics to stderr.
"""

import argparse
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from components.file_operations import atomic_write_bytes, same_path
from config import get_config
from modules.attack.attack_runner import run_byte_kpa, run_coefficient_kpa
from modules.codec.codec_syntax import codeword_map, parse_class_groups
from modules.codec.codec_video import build_svc, export_frames
from modules.container.svc_corpus import synthetic_corpus
from modules.container.svc_format import CODEC_RAW, SvcFile, read_svc, svc_summary, write_svc
from modules.container.svc_media import (
    RawVideo, ingest_raw, parse_dims, parse_fps, write_pgm, write_wav
)
from modules.keys.keys_wrap import MasterKey
from modules.metrics.metrics_bench import bench, bench_to_dict, format_bench_table
from modules.metrics.metrics_compare import (
    compare, compare_to_csv, compare_to_json, compare_to_text, compare_to_xlsx
)
from modules.schemes.scheme_config import get_all_scheme_names, get_comparison_scheme_names
from modules.schemes.scheme_coordinator import SchemeCoordinator
from modules.schemes.scheme_types import SchemeParams
from modules.shared.errors import AttackError, SchemeError, SvcryptError, UsageError
from modules.shared.logging_setup import configure_logging

logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)

# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def _add_io(parser: argparse.ArgumentParser, output_help: str) -> None:
    parser.add_argument('--input', '-i', required=True, help="Input path")
    parser.add_argument('--output', '-o', required=True, help=output_help)


def _add_key(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--key', default=None,
                        help="Master key as 32, 48 or 64 hex characters (default: $SVCRYPT_KEY)")


def _add_codec(parser: argparse.ArgumentParser, settings) -> None:
    parser.add_argument('--qp', type=int, default=settings.DEFAULT_QP, help="Quantizer 1..31")
    parser.add_argument('--gop', type=int, default=settings.DEFAULT_GOP, help="I-frame interval")


def _add_scheme_params(parser: argparse.ArgumentParser, settings) -> None:
    parser.add_argument('--classes', default='all',
                        help="Codeword class groups for selective AES: dc, ac, mvd, signs or all")
    parser.add_argument('--fraction', type=float, default=settings.CHOOSE_FRACTION,
                        help="Fraction of frames encrypted by choose")
    parser.add_argument('--perceptual-fraction', type=float, default=settings.PERCEPTUAL_FRACTION,
                        help="Fraction of macroblocks per frame touched by perceptual")
    parser.add_argument('--categories', default='1,2,3',
                        help="Perceptual categories, comma separated")


def build_parser() -> argparse.ArgumentParser:
    """Parser for every subcommand"""
    settings = get_config()
    parser = CommandParser(prog='svcrypt', description="Selective encryption of compressed video.")
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="-v for progress, -vv for per-frame detail")
    subparsers = parser.add_subparsers(dest='command', required=True, help="Sub-commands")

    # Encode command
    encode_parser = subparsers.add_parser('encode', help="PGM frames or raw luma (+ WAV) to SVC")
    _add_io(encode_parser, "SVC file to write")
    encode_parser.add_argument('--dims', default=None, help="WxH, required for raw luma streams")
    encode_parser.add_argument('--fps', default='25', help="Frame rate, e.g. 25 or 30000/1001")
    encode_parser.add_argument('--audio', default=None, help="16-bit mono WAV file")
    encode_parser.add_argument('--codec', choices=['DCT', 'RAW'], default='DCT', type=str.upper)
    _add_codec(encode_parser, settings)

    # Decode command
    decode_parser = subparsers.add_parser('decode', help="SVC to PGM sequence + WAV")
    _add_io(decode_parser, "Directory for frame_NNNN.pgm and audio.wav")
    decode_parser.add_argument('--tolerant', action='store_true',
                               help="Export undecodable frames as gray (implied for encrypted files)")

    # Encrypt command
    encrypt_parser = subparsers.add_parser('encrypt', help="Encrypt an SVC file")
    _add_io(encrypt_parser, "Encrypted SVC file to write")
    encrypt_parser.add_argument('--scheme', choices=get_all_scheme_names(), default='proposed')
    _add_key(encrypt_parser)
    _add_scheme_params(encrypt_parser, settings)
    encrypt_parser.add_argument('--format', choices=['text', 'json'], default='text',
                                help="Report format")
    encrypt_parser.add_argument('--workers', type=int, default=settings.WORKERS)

    # Decrypt command
    decrypt_parser = subparsers.add_parser('decrypt', help="Decrypt an SVC file")
    _add_io(decrypt_parser, "Decrypted SVC file to write")
    _add_key(decrypt_parser)
    decrypt_parser.add_argument('--workers', type=int, default=settings.WORKERS)

    # Attack command
    attack_parser = subparsers.add_parser('attack', help="Known-plaintext attack report (JSON)")
    attack_parser.add_argument('--plain', required=True, help="Unencrypted SVC file (RAW for crisscross)")
    attack_parser.add_argument('--cipher', required=True, help="Encrypted SVC file")
    attack_parser.add_argument('--known-frames', type=int, default=None,
                               help="Number of leading frames the attacker knows")
    attack_parser.add_argument('--output', '-o', default=None, help="Write the report here instead of stdout")
    _add_codec(attack_parser, settings)

    # Bench command
    bench_parser = subparsers.add_parser('bench', help="Median stage timings of one scheme")
    bench_parser.add_argument('--input', '-i', required=True, help="Unencrypted SVC file")
    bench_parser.add_argument('--scheme', choices=get_all_scheme_names(), default='proposed')
    _add_key(bench_parser)
    _add_scheme_params(bench_parser, settings)
    bench_parser.add_argument('--runs', type=int, default=settings.BENCH_RUNS)
    bench_parser.add_argument('--format', choices=['text', 'json'], default='text')

    # Compare command
    compare_parser = subparsers.add_parser('compare', help="Scheme comparison table")
    compare_parser.add_argument('--schemes', default='all', help="'all' or a comma separated list")
    compare_parser.add_argument('--corpus', default='synthetic',
                                help="'synthetic' or a directory of clip folders and SVC files")
    _add_key(compare_parser)
    _add_codec(compare_parser, settings)
    _add_scheme_params(compare_parser, settings)
    compare_parser.add_argument('--known-frames', type=int, default=settings.KPA_KNOWN_FRAMES)
    compare_parser.add_argument('--format', choices=['csv', 'text', 'json', 'xlsx'], default='csv')
    compare_parser.add_argument('--output', '-o', default=None, help="Output file (required for xlsx)")

    # Inspect command
    inspect_parser = subparsers.add_parser('inspect', help="Header, index table and codeword summary")
    inspect_parser.add_argument('--input', '-i', required=True)
    inspect_parser.add_argument('--format', choices=['text', 'json'], default='text')

    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)

# ============================================================================
# HELPERS
# ============================================================================

def _master_key(args: argparse.Namespace, required: bool = True) -> Optional[MasterKey]:
    text = args.key or get_config().MASTER_KEY_HEX
    if not text:
        if required:
            raise UsageError("master key required (--key or SVCRYPT_KEY)")
        return None
    return MasterKey.from_hex(text)


def _check_distinct(*paths) -> None:
    for index, first in enumerate(paths):
        for second in paths[index + 1:]:
            if same_path(first, second):
                raise UsageError(f"input and output must differ: {first}")


def _scheme_params(args: argparse.Namespace) -> SchemeParams:
    try:
        classes = parse_class_groups(args.classes)
        categories = tuple(int(part) for part in args.categories.split(',') if part.strip())
    except ValueError as e:
        raise UsageError(str(e)) from e
    params = SchemeParams(
        scheme=getattr(args, 'scheme', 'proposed'),
        classes=classes,
        fraction=args.fraction,
        perceptual_fraction=args.perceptual_fraction,
        categories=categories
    )
    try:
        return params.validate()
    except SchemeError as e:
        raise UsageError(e.message) from e


def json_ready(value: Any) -> Any:
    """Plain JSON types; infinities become the string 'inf'"""
    if isinstance(value, dict):
        return {str(key): json_ready(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_ready(item) for item in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


def _emit(text: str, output: Optional[str] = None) -> None:
    if output:
        atomic_write_bytes(output, text.encode('utf-8'))
    else:
        print(text)


def _load_corpus(source: str) -> List[tuple]:
    """'synthetic' or a directory: one entry per clip folder of PGMs (+ .wav) or unencrypted SVC file"""
    if source == 'synthetic':
        return synthetic_corpus()

    root = Path(source)
    if not root.is_dir():
        raise UsageError(f"corpus must be 'synthetic' or a directory: {source}")

    corpus = []
    for entry in sorted(root.iterdir()):
        if entry.is_dir():
            wavs = sorted(entry.glob('*.wav'))
            video, audio = ingest_raw(entry, audio_source=wavs[0] if wavs else None)
            corpus.append((entry.name, video, audio))
        elif entry.suffix.lower() == '.svc':
            svc = read_svc(entry)
            if svc.header.encrypted:
                raise UsageError(f"corpus file is encrypted: {entry}")
            frames, audio = export_frames(svc)
            video = RawVideo.from_arrays(frames, (svc.header.fps_num, svc.header.fps_den))
            corpus.append((entry.stem, video, audio))
    if not corpus:
        raise UsageError(f"no clips found in {source}")
    logger.info(f"Loaded {len(corpus)} corpus clips from {source}")
    return corpus


def _raw_from_svc(svc: SvcFile) -> RawVideo:
    if svc.header.codec_id != CODEC_RAW or svc.header.encrypted:
        raise AttackError("coefficient attack needs an unencrypted RAW plaintext container")
    return RawVideo(svc.header.width, svc.header.height, svc.header.fps_num, svc.header.fps_den,
                    tuple(record.video_payload for record in svc.records))


def inspect_report(svc: SvcFile) -> Dict[str, Any]:
    """svc_summary plus per-frame codeword class bit counts for DCT payloads"""
    summary = svc_summary(svc)
    if svc.header.codec_id == CODEC_RAW:
        summary['codewords'] = None
        return summary

    totals: Dict[str, int] = {}
    frames = []
    for index, record in enumerate(svc.records):
        try:
            counts = codeword_map(record.video_payload, svc.header.width, svc.header.height).class_bit_counts()
        except SvcryptError as e:
            frames.append({'frame': index, 'error': e.message})
            continue
        frames.append({'frame': index, 'bits': counts})
        for name, bits in counts.items():
            totals[name] = totals.get(name, 0) + bits
    summary['codewords'] = {
        'totals': totals,
        'unparsable_frames': sum(1 for frame in frames if 'error' in frame),
        'frames': frames
    }
    return summary


def format_inspect(report: Dict[str, Any]) -> str:
    lines = []
    for key, value in report.items():
        if key not in ('index', 'codewords'):
            lines.append(f"{key:<18} {value}")
    lines.append("")
    lines.append(f"{'frame':>6} {'offset':>10} {'video':>8} {'audio':>8}")
    for entry in report['index']:
        lines.append(f"{entry['frame']:>6} {entry['offset']:>10} {entry['video_len']:>8} {entry['audio_len']:>8}")

    codewords = report.get('codewords')
    if codewords:
        lines.append("")
        lines.append("codeword bits")
        for name, bits in codewords['totals'].items():
            lines.append(f"  {name:<18} {bits}")
        if codewords['unparsable_frames']:
            lines.append(f"  unparsable frames  {codewords['unparsable_frames']}")
    return '\n'.join(lines)

# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_encode(args: argparse.Namespace) -> int:
    _check_distinct(args.input, args.output)
    if args.audio:
        _check_distinct(args.audio, args.output)
    dims = parse_dims(args.dims) if args.dims else None
    video, audio = ingest_raw(args.input, dims, parse_fps(args.fps), args.audio)
    svc = build_svc(video, audio, args.codec, args.qp, args.gop)
    size = write_svc(args.output, svc)
    logger.info(f"Encoded {svc.frame_count} frames to {args.output} ({size} bytes)")
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    _check_distinct(args.input, args.output)
    svc = read_svc(args.input)
    frames, audio = export_frames(svc, tolerant=args.tolerant or svc.header.encrypted)

    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    for index, frame in enumerate(frames):
        write_pgm(out_dir / f"frame_{index:04d}.pgm", frame)
    if audio is not None:
        write_wav(out_dir / 'audio.wav', audio)
    logger.info(f"Decoded {len(frames)} frames to {out_dir}")
    return 0


def cmd_encrypt(args: argparse.Namespace) -> int:
    _check_distinct(args.input, args.output)
    master = _master_key(args)
    params = _scheme_params(args)
    svc = read_svc(args.input)

    encrypted, report = SchemeCoordinator(args.workers).encrypt(svc, master, params)
    write_svc(args.output, encrypted)

    data = report.to_dict()
    if args.format == 'json':
        _emit(json.dumps(json_ready(data), indent=2))
    else:
        _emit('\n'.join(f"{key:<22} {value}" for key, value in data.items()))
    return 0


def cmd_decrypt(args: argparse.Namespace) -> int:
    _check_distinct(args.input, args.output)
    master = _master_key(args)
    svc = read_svc(args.input)
    write_svc(args.output, SchemeCoordinator(args.workers).decrypt(svc, master))
    return 0


def cmd_attack(args: argparse.Namespace) -> int:
    settings = get_config()
    plain = read_svc(args.plain)
    cipher = read_svc(args.cipher)
    if not cipher.header.encrypted:
        raise AttackError("cipher file is not encrypted")

    if cipher.header.scheme_name == 'crisscross':
        known = settings.KPA_COEFFICIENT_KNOWN_FRAMES if args.known_frames is None else args.known_frames
        report = run_coefficient_kpa(_raw_from_svc(plain), cipher, args.qp, args.gop, known)
    else:
        if args.known_frames is None:
            known = max(1, min(settings.KPA_KNOWN_FRAMES, plain.frame_count - 1))
        else:
            known = args.known_frames
        report = run_byte_kpa(plain, cipher, known)
    _emit(json.dumps(json_ready(report), indent=2), args.output)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    master = _master_key(args)
    params = _scheme_params(args)
    svc = read_svc(args.input)
    result = bench(args.scheme, svc, master, params, args.runs)
    if args.format == 'json':
        _emit(json.dumps(json_ready(bench_to_dict(result)), indent=2))
    else:
        _emit(format_bench_table(result))
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if args.schemes.strip().lower() == 'all':
        schemes = get_comparison_scheme_names()
    else:
        schemes = [name.strip() for name in args.schemes.split(',') if name.strip()]
    unknown = [name for name in schemes if name not in get_all_scheme_names()]
    if unknown or not schemes:
        raise UsageError(f"unknown schemes: {', '.join(unknown) or args.schemes}")
    if args.format == 'xlsx' and not args.output:
        raise UsageError("--output is required for xlsx")

    master = _master_key(args, required=False)
    params = _scheme_params(args)
    settings = get_config()
    result = compare(schemes, _load_corpus(args.corpus), master, args.qp, args.gop,
                     args.known_frames, settings.KPA_COEFFICIENT_KNOWN_FRAMES, params)
    for error in result['errors']:
        logger.warning(f"{error['scheme']} on {error['clip']}: {error['error']}")

    table = result['table']
    if args.format == 'xlsx':
        atomic_write_bytes(args.output, compare_to_xlsx(table))
    elif args.format == 'json':
        _emit(compare_to_json(table), args.output)
    elif args.format == 'text':
        _emit(compare_to_text(table), args.output)
    else:
        _emit(compare_to_csv(table).rstrip('\n'), args.output)
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    report = inspect_report(read_svc(args.input))
    if args.format == 'json':
        _emit(json.dumps(json_ready(report), indent=2))
    else:
        _emit(format_inspect(report))
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    'encode': cmd_encode,
    'decode': cmd_decode,
    'encrypt': cmd_encrypt,
    'decrypt': cmd_decrypt,
    'attack': cmd_attack,
    'bench': cmd_bench,
    'compare': cmd_compare,
    'inspect': cmd_inspect
}


def _log_level(verbose: int) -> str:
    if verbose >= 2:
        return 'DEBUG'
    if verbose == 1:
        return 'INFO'
    return get_config().LOG_LEVEL


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand and return the process exit code"""
    try:
        args = parse_arguments(argv)
    except UsageError as e:
        print(f"svcrypt: error: {e.message}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(_log_level(args.verbose))
    try:
        return COMMANDS[args.command](args)
    except SvcryptError as e:
        logger.error(f"{args.command} failed: {e.message}")
        print(f"svcrypt: {e.message}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"svcrypt: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"svcrypt: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
