"""
WAV input/output, synthetic test signals and report serialization.
"""

import contextlib
import csv
import enum
import json
import struct
import sys
from dataclasses import dataclass

import numpy as np

from .exceptions import (ConfigError, MalformedHeaderError,
                         UnsupportedBitDepthError, UnsupportedCodecError)
from .signal import Signal

PCM_SCALE = 32768.0

_WAVE_FORMAT_PCM = 0x0001
_WAVE_FORMAT_EXTENSIBLE = 0xFFFE


@dataclass(frozen=True)
class WavInfo:
    sample_rate_hz: int
    bits_per_sample: int
    channels: int
    n_samples: int


def _chunks(data):
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8:pos + 8 + size]
        if len(body) < size and cid != b"data":
            raise MalformedHeaderError(f"truncated {cid!r} chunk")
        yield cid, body
        pos += 8 + size + (size & 1)


def parse_wav(data):
    """Decode the bytes of a 16-bit PCM RIFF/WAVE file.

    Channels are averaged to mono; samples are scaled by 1/32768.
    """
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedHeaderError("not a RIFF/WAVE file")
    fmt = pcm = None
    for cid, body in _chunks(data):
        if cid == b"fmt " and fmt is None:
            if len(body) < 16:
                raise MalformedHeaderError("fmt chunk too short")
            fmt = struct.unpack_from("<HHIIHH", body)
            if fmt[0] == _WAVE_FORMAT_EXTENSIBLE and len(body) >= 26:
                # sub-format GUID starts with the actual format tag
                fmt = (struct.unpack_from("<H", body, 24)[0],) + fmt[1:]
        elif cid == b"data" and pcm is None:
            pcm = body
    if fmt is None or pcm is None:
        raise MalformedHeaderError("missing fmt or data chunk")
    tag, channels, rate, _, block_align, bits = fmt
    if tag != _WAVE_FORMAT_PCM:
        raise UnsupportedCodecError(f"unsupported codec: format tag {tag:#06x}")
    if bits != 16:
        raise UnsupportedBitDepthError(f"unsupported bit depth: {bits}")
    if channels < 1 or rate < 1:
        raise MalformedHeaderError("invalid channel count or sample rate")
    frame_bytes = 2 * channels
    n = len(pcm) // frame_bytes
    raw = np.frombuffer(pcm[:n * frame_bytes], dtype="<i2")
    samples = raw.reshape(n, channels).astype(float).mean(axis=1) / PCM_SCALE
    if n == 0:
        raise MalformedHeaderError("data chunk holds no samples")
    return Signal(samples, float(rate)), WavInfo(rate, bits, channels, n)


def read_wav(path):
    with open(path, "rb") as fh:
        return parse_wav(fh.read())


def encode_wav(signal, sample_rate_hz=None):
    """Encode as mono 16-bit PCM; values are rounded and clipped."""
    rate = sample_rate_hz or signal.sample_rate_hz
    if float(rate) != int(rate):
        raise ConfigError(f"WAV needs an integer sample rate, got {rate}")
    rate = int(rate)
    pcm = np.clip(np.round(np.asarray(signal.samples) * PCM_SCALE),
                  -32768, 32767).astype("<i2").tobytes()
    header = struct.pack("<4sI4s4sIHHIIHH4sI", b"RIFF", 36 + len(pcm),
                         b"WAVE", b"fmt ", 16, _WAVE_FORMAT_PCM, 1, rate,
                         2 * rate, 2, 16, b"data", len(pcm))
    return header + pcm


def write_wav(path, signal, sample_rate_hz=None):
    data = encode_wav(signal, sample_rate_hz)
    with open(path, "wb") as fh:
        fh.write(data)


class SynthKind(enum.Enum):
    TONE = "tone"
    CHIRP = "chirp"
    WHITE_NOISE = "noise"
    MULTI_TONE = "multitone"


@dataclass(frozen=True)
class SynthSpec:
    """Test-signal recipe.

    ``frequencies`` is ``[f]`` for a tone, ``[f0, f1]`` for a chirp and any
    list for a multi-tone. Noise is uniform in [-1, 1] drawn from
    ``numpy.random.default_rng(seed)`` (PCG64).
    """

    kind: SynthKind
    duration_s: float
    frequencies: tuple = ()
    seed: int = 0
    sample_rate_hz: int = 16000

    def __post_init__(self):
        object.__setattr__(self, "kind", SynthKind(self.kind))
        object.__setattr__(self, "frequencies",
                           tuple(float(f) for f in self.frequencies))
        if not self.duration_s > 0:
            raise ConfigError("duration must be positive")
        if self.sample_rate_hz <= 0:
            raise ConfigError("sample rate must be positive")
        nyquist = self.sample_rate_hz / 2
        for f in self.frequencies:
            if not 0 <= f < nyquist:
                raise ConfigError(
                    f"frequency {f} Hz must lie in [0, {nyquist}) Hz")
        need = {SynthKind.TONE: 1, SynthKind.CHIRP: 2}.get(self.kind)
        if need and len(self.frequencies) != need:
            raise ConfigError(f"{self.kind.value} needs {need} frequencies")
        if self.kind is SynthKind.MULTI_TONE and not self.frequencies:
            raise ConfigError("multitone needs at least one frequency")


def synthesize(spec):
    fs = spec.sample_rate_hz
    n = max(1, int(round(spec.duration_s * fs)))
    t = np.arange(n) / fs
    if spec.kind is SynthKind.TONE:
        x = np.sin(2 * np.pi * spec.frequencies[0] * t)
    elif spec.kind is SynthKind.CHIRP:
        f0, f1 = spec.frequencies
        rate = (f1 - f0) / spec.duration_s
        x = np.sin(2 * np.pi * (f0 * t + rate * t * t / 2))
    elif spec.kind is SynthKind.MULTI_TONE:
        x = sum(np.sin(2 * np.pi * f * t) for f in spec.frequencies)
        x = x / len(spec.frequencies)
    else:
        x = np.random.default_rng(spec.seed).uniform(-1.0, 1.0, n)
    return Signal(x, float(fs))


# --- reports -------------------------------------------------------------

def _fmt(v):
    return format(float(v), ".6g")


@contextlib.contextmanager
def _open_text(path):
    if path is None or path == "-":
        yield sys.stdout
    elif hasattr(path, "write"):
        yield path
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _write_csv(path, header, rows):
    with _open_text(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def case2_rows(results):
    """Header and rows for the concatenated-r table: one row per sample."""
    methods = None
    rows = []
    for sample, reports in results.items():
        labels = [r.method.label for r in reports]
        if methods is None:
            methods = labels
        elif labels != methods:
            raise ConfigError("all samples must use the same methods")
        rows.append([sample] + [_fmt(r.concatenated_r) for r in reports])
    return ["sample"] + (methods or []), rows


def case1_rows(reports, value="r2"):
    """Header and rows for the per-coefficient table: one row per coefficient."""
    attr = {"r2": "per_coefficient_r2", "r": "per_coefficient_r"}[value]
    cols = [getattr(r, attr) for r in reports]
    n = len(cols[0]) if cols else 0
    rows = [[str(i + 1)] + [_fmt(c[i]) for c in cols] for i in range(n)]
    return ["coeff"] + [r.method.label for r in reports], rows


def write_report(results, path=None, fmt="csv", table="case2"):
    """Serialize correlation reports.

    ``results`` maps a sample name to its list of reports. CSV ``table`` is
    ``"case2"`` (one row per sample), ``"case1"`` (r squared per
    coefficient) or ``"case1_r"`` (signed r); the case-1 tables need exactly
    one sample. JSON always carries the full reports.
    """
    if fmt == "json":
        doc = {s: [r.to_dict() for r in reps] for s, reps in results.items()}
        with _open_text(path) as fh:
            json.dump(doc, fh, indent=2, allow_nan=False)
            fh.write("\n")
        return
    if fmt != "csv":
        raise ConfigError(f"unknown format {fmt!r}")
    if table == "case2":
        header, rows = case2_rows(results)
    elif table in ("case1", "case1_r"):
        if len(results) != 1:
            raise ConfigError("per-coefficient table needs exactly one sample")
        (reports,) = results.values()
        header, rows = case1_rows(reports, "r" if table == "case1_r" else "r2")
    else:
        raise ConfigError(f"unknown table {table!r}")
    _write_csv(path, header, rows)


def read_report_json(path):
    from .analysis import CorrelationReport
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return {s: [CorrelationReport.from_dict(d) for d in reps]
            for s, reps in doc.items()}


def write_mfcc(mfcc, path=None, fmt="csv"):
    """One line (CSV) or list (JSON) per coefficient, one value per frame."""
    coeffs = np.asarray(getattr(mfcc, "coeffs", mfcc))
    if fmt == "json":
        with _open_text(path) as fh:
            json.dump({"n_filters": coeffs.shape[0],
                       "n_frames": coeffs.shape[1],
                       "coeffs": coeffs.tolist()}, fh)
            fh.write("\n")
    elif fmt == "csv":
        with _open_text(path) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerows([[_fmt(v) for v in row] for row in coeffs])
    else:
        raise ConfigError(f"unknown format {fmt!r}")
