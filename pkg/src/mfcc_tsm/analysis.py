"""
Pearson correlation between MFCC matrices and the six-method comparison.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateVectorError, SignalError, UnsupportedFactorError
from .melbank import ALL_METHODS, BankMethod, MelBankConfig
from .mfcc import DEFAULT_LOG_FLOOR, mfcc_downsampled, mfcc_pipeline
from .signal import FrameParams, Window, decimate

log = logging.getLogger(__name__)

# relative variance below this counts as a constant vector
_DEGENERATE_RTOL = 64 * np.finfo(float).eps


def pearson(x, y):
    """Pearson correlation with the single-pass textbook formula.

    ``r = (Sxy - Sx Sy / n) / sqrt((Sxx - Sx^2 / n) (Syy - Sy^2 / n))``,
    clamped to [-1, 1]. Each vector is first shifted by its first element,
    which leaves r unchanged but limits cancellation for large offsets.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise SignalError(f"length mismatch: {x.size} vs {y.size}")
    n = x.size
    if n < 2:
        raise DegenerateVectorError("degenerate vector: need at least 2 points")
    x = x - x[0]
    y = y - y[0]
    sx, sy = x.sum(), y.sum()
    sxx, syy = np.dot(x, x), np.dot(y, y)
    vx = sxx - sx * sx / n
    vy = syy - sy * sy / n
    if vx <= _DEGENERATE_RTOL * sxx or vy <= _DEGENERATE_RTOL * syy:
        raise DegenerateVectorError("degenerate vector: zero variance")
    r = (np.dot(x, y) - sx * sy / n) / math.sqrt(vx * vy)
    return float(min(1.0, max(-1.0, r)))


def _trimmed(original, down):
    a = getattr(original, "coeffs", original)
    b = getattr(down, "coeffs", down)
    if a.shape[0] != b.shape[0]:
        raise SignalError(
            f"coefficient count mismatch: {a.shape[0]} vs {b.shape[0]}")
    p = min(a.shape[1], b.shape[1])
    return a[:, :p], b[:, :p]


def case1_correlation(original, down, on_degenerate="raise"):
    """Per-coefficient r across frames (both trimmed to the shorter length).

    With ``on_degenerate="nan"`` a coefficient that is constant over all
    frames yields NaN instead of raising.
    """
    a, b = _trimmed(original, down)
    out = np.empty(a.shape[0])
    for i, (ra, rb) in enumerate(zip(a, b)):
        try:
            out[i] = pearson(ra, rb)
        except DegenerateVectorError:
            if on_degenerate != "nan":
                raise
            log.warning("coefficient %d is constant over frames; r set to NaN",
                        i + 1)
            out[i] = np.nan
    return out


def case2_correlation(original, down):
    """Single r over the row-major concatenation of all coefficients."""
    a, b = _trimmed(original, down)
    return pearson(a.ravel(), b.ravel())


def _json_floats(values):
    # NaN (undefined r) has no JSON literal
    return [None if math.isnan(v) else float(v) for v in values]


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    method: BankMethod
    per_coefficient_r: np.ndarray
    concatenated_r: float
    frames_used: int

    @property
    def per_coefficient_r2(self):
        return self.per_coefficient_r ** 2

    def to_dict(self):
        return {
            "method": self.method.label,
            "per_coefficient_r": _json_floats(self.per_coefficient_r),
            "per_coefficient_r2": _json_floats(self.per_coefficient_r2),
            "concatenated_r": float(self.concatenated_r),
            "frames_used": int(self.frames_used),
        }

    @classmethod
    def from_dict(cls, d):
        r = [np.nan if v is None else v for v in d["per_coefficient_r"]]
        return cls(BankMethod.parse(d["method"]), np.asarray(r, dtype=float),
                   float(d["concatenated_r"]), int(d["frames_used"]))


@dataclass(frozen=True)
class PipelineConfig:
    """Everything needed to compare original and decimated MFCCs.

    Defaults: 512-sample frames with 256-sample hop (32 ms / 16 ms at
    16 kHz), 30 filters over 130-6800 Hz.
    """

    frame_len: int = 512
    hop: int = 256
    window: Window = Window.PAPER_HAMMING
    n_filters: int = 30
    f_min_hz: float = 130.0
    f_max_hz: float = 6800.0
    log_floor: float = DEFAULT_LOG_FLOOR
    alpha: int = 2
    methods: tuple = field(default=ALL_METHODS)

    def __post_init__(self):
        object.__setattr__(self, "methods",
                           tuple(BankMethod.parse(m) for m in self.methods))
        object.__setattr__(self, "window", Window(self.window))

    @property
    def frame_params(self):
        return FrameParams(self.frame_len, self.hop, self.window)

    def bank_config(self, sample_rate_hz):
        return MelBankConfig.for_frames(self.frame_len, sample_rate_hz,
                                        self.n_filters, self.f_min_hz,
                                        self.f_max_hz)


def compare_methods(signal, config=PipelineConfig()):
    """Correlate original MFCCs with MFCCs of the 2x-decimated signal, once
    per bank method. Reports come back in ``config.methods`` order."""
    if config.alpha != 2:
        raise UnsupportedFactorError(f"unsupported factor: alpha={config.alpha}")
    params = config.frame_params
    bank_cfg = config.bank_config(signal.sample_rate_hz)
    original = mfcc_pipeline(signal, params, bank_cfg, config.log_floor)
    y = decimate(signal, config.alpha)
    params_down = params.scaled(config.alpha)
    reports = []
    for method in config.methods:
        down = mfcc_downsampled(y, method, bank_cfg, params_down,
                                config.log_floor)
        reports.append(CorrelationReport(
            method,
            case1_correlation(original, down, on_degenerate="nan"),
            case2_correlation(original, down),
            min(original.n_frames, down.n_frames)))
    return reports
