"""
Command-line driver.

    mfcc-tsm extract  --input a.wav [--output a.csv]
    mfcc-tsm compare  --input a.wav --input b.wav [--output DIR]
    mfcc-tsm resample --input a.wav --output b.wav --up 1 --down 2
    mfcc-tsm synth tone --freq 1000 --dur 1 --output t.wav

Exit codes: 0 success, 2 usage, 3 I/O, 4 computation.
"""

import argparse
import logging
import os
import sys

from . import io as wavio
from .analysis import PipelineConfig, compare_methods
from .exceptions import ConfigError, MfccTsmError, WavError
from .melbank import BankMethod, MelBankConfig
from .mfcc import DEFAULT_LOG_FLOOR, mfcc_pipeline
from .signal import FrameParams, ResampleSpec, Window, resample, samples_for

log = logging.getLogger("mfcc_tsm")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_COMPUTE = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _methods(text):
    try:
        return tuple(BankMethod.parse(m) for m in text.split(",") if m.strip())
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_analysis_flags(p):
    p.add_argument("--frame-ms", type=_positive_float, default=32.0)
    p.add_argument("--hop-ms", type=_positive_float, default=16.0)
    p.add_argument("--nfilters", type=_positive_int, default=30)
    p.add_argument("--fmin", type=float, default=130.0)
    p.add_argument("--fmax", type=float, default=6800.0)
    p.add_argument("--window", choices=[w.value for w in Window],
                   default=Window.PAPER_HAMMING.value)
    p.add_argument("--log-floor", type=_positive_float,
                   default=DEFAULT_LOG_FLOOR)
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mfcc-tsm",
        description="MFCCs of original and 2x-decimated speech.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="MFCC matrix of a WAV file")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    _add_analysis_flags(p)

    p = sub.add_parser("compare",
                       help="correlate original and decimated-speech MFCCs")
    p.add_argument("--input", required=True, action="append",
                   help="WAV file; repeat for several samples")
    p.add_argument("--output",
                   help="output directory (default: case II table on stdout)")
    p.add_argument("--methods", type=_methods, default=tuple(BankMethod))
    p.add_argument("--alpha", type=_positive_int, default=2)
    _add_analysis_flags(p)

    p = sub.add_parser("resample", help="rational resampling of a WAV file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--up", type=_positive_int, default=1)
    p.add_argument("--down", type=_positive_int, default=1)
    p.add_argument("--anti-alias", action="store_true")

    p = sub.add_parser("synth", help="write a synthetic test signal")
    p.add_argument("kind", choices=[k.value for k in wavio.SynthKind])
    p.add_argument("--freq", type=float, action="append", default=[],
                   help="Hz; repeat for chirp (start, end) or multitone")
    p.add_argument("--dur", type=_positive_float, default=1.0)
    p.add_argument("--rate", type=_positive_int, default=16000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    return parser


def _frame_params(args, rate):
    frame_len = samples_for(args.frame_ms, rate)
    hop = samples_for(args.hop_ms, rate)
    if frame_len % 2 or frame_len < 2:
        raise UsageError(f"--frame-ms {args.frame_ms} gives an odd or empty "
                         f"frame ({frame_len} samples) at {rate:g} Hz")
    if not 0 < hop <= frame_len:
        raise UsageError("--hop-ms must be positive and not exceed --frame-ms")
    return FrameParams(frame_len, hop, Window(args.window))


def _bank_config(args, params, rate):
    try:
        return MelBankConfig.for_frames(params.frame_len, rate, args.nfilters,
                                        args.fmin, args.fmax)
    except ConfigError as exc:
        raise UsageError(str(exc))


def cmd_extract(args):
    signal, _ = wavio.read_wav(args.input)
    rate = signal.sample_rate_hz
    params = _frame_params(args, rate)
    config = _bank_config(args, params, rate)
    mfcc = mfcc_pipeline(signal, params, config, args.log_floor)
    wavio.write_mfcc(mfcc, args.output, args.format)


def _sample_name(path):
    return os.path.splitext(os.path.basename(path))[0]


def cmd_compare(args):
    if args.alpha != 2:
        raise UsageError(f"unsupported factor: alpha={args.alpha}")
    if not args.methods:
        raise UsageError("--methods is empty")
    results = {}
    for path in args.input:
        signal, _ = wavio.read_wav(path)
        rate = signal.sample_rate_hz
        if rate != 16000:
            log.warning("%s is sampled at %g Hz, not 16 kHz; frame sizes "
                        "follow --frame-ms/--hop-ms", path, rate)
        params = _frame_params(args, rate)
        if params.frame_len % 4 or params.hop % 2:
            raise UsageError("frame and hop lengths must allow halving")
        _bank_config(args, params, rate)
        config = PipelineConfig(params.frame_len, params.hop, params.window,
                                args.nfilters, args.fmin, args.fmax,
                                args.log_floor, args.alpha, args.methods)
        name = _sample_name(path)
        if name in results:
            name = path
        results[name] = compare_methods(signal, config)

    if args.output is None:
        wavio.write_report(results, None, args.format, "case2")
        return
    os.makedirs(args.output, exist_ok=True)
    if args.format == "json":
        wavio.write_report(results, os.path.join(args.output, "reports.json"),
                           "json")
        return
    wavio.write_report(results, os.path.join(args.output, "case2.csv"))
    for name, reports in results.items():
        stem = _sample_name(name)
        for table in ("case1", "case1_r"):
            suffix = "r2" if table == "case1" else "r"
            wavio.write_report(
                {name: reports},
                os.path.join(args.output, f"{stem}_case1_{suffix}.csv"),
                "csv", table)


def cmd_resample(args):
    signal, _ = wavio.read_wav(args.input)
    out = resample(signal, ResampleSpec(args.up, args.down, args.anti_alias))
    rate = out.sample_rate_hz
    if rate != int(rate):
        raise MfccTsmError(f"output rate {rate} Hz is not an integer")
    wavio.write_wav(args.output, out)


def cmd_synth(args):
    try:
        spec = wavio.SynthSpec(args.kind, args.dur, tuple(args.freq),
                               args.seed, args.rate)
    except ConfigError as exc:
        raise UsageError(str(exc))
    wavio.write_wav(args.output, wavio.synthesize(spec))


COMMANDS = {"extract": cmd_extract, "compare": cmd_compare,
            "resample": cmd_resample, "synth": cmd_synth}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mfcc-tsm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, WavError) as exc:
        print(f"mfcc-tsm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MfccTsmError as exc:
        print(f"mfcc-tsm: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
