"""
MFCC pipeline: Mel spectrum, log compression, cosine transform, plus the
per-method rules for MFCCs of 2x-decimated speech.
"""

from dataclasses import dataclass

import numpy as np

from . import melbank
from .exceptions import ConfigError, SignalError
from .melbank import BankMethod
from .signal import stft

DEFAULT_LOG_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class MelSpectrum:
    """Filter outputs, F x P. ``log`` tells whether values are log-compressed."""

    values: np.ndarray
    bank_tag: BankMethod = None
    log: bool = False


@dataclass(frozen=True, eq=False)
class MfccMatrix:
    """Cepstral coefficients, one row per coefficient r = 1..F, one column
    per frame."""

    coeffs: np.ndarray
    source: str = ""

    @property
    def n_filters(self):
        return self.coeffs.shape[0]

    @property
    def n_frames(self):
        return self.coeffs.shape[1]


def mel_spectrum(spec, bank):
    """``values[m, p] = sum_k weights[m, k] * |X_p(k)|``."""
    mags = spec.magnitudes if hasattr(spec, "magnitudes") else np.asarray(spec)
    if bank.n_bins != mags.shape[0]:
        raise SignalError(
            f"dimension mismatch: bank has {bank.n_bins} bins, "
            f"spectrum has {mags.shape[0]}")
    return MelSpectrum(bank.weights @ mags, bank.method)


def log_compress(ms, floor=DEFAULT_LOG_FLOOR):
    if not floor > 0:
        raise ConfigError("log floor must be positive")
    return MelSpectrum(np.log(np.maximum(ms.values, floor)), ms.bank_tag,
                       log=True)


def dct_basis(n_filters):
    """``cos(r (2m - 1) pi / 2F)`` for r = 1..F (rows), m = 1..F (columns).

    There is no r = 0 row and no orthonormal scaling.
    """
    r = np.arange(1, n_filters + 1)[:, None]
    m = np.arange(1, n_filters + 1)[None, :]
    return np.cos(r * (2 * m - 1) * np.pi / (2 * n_filters))


def dct_mfcc(log_mel, source=""):
    values = log_mel.values if isinstance(log_mel, MelSpectrum) else log_mel
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return MfccMatrix(dct_basis(values.shape[0]) @ values, source)


def mfcc_pipeline(signal, params, config, floor=DEFAULT_LOG_FLOOR):
    """MFCCs of ``signal`` with the standard Mel bank built from ``config``."""
    spec = stft(signal, params)
    if config.n_bins != params.frame_len:
        raise ConfigError("bank length must equal the frame length")
    ms = mel_spectrum(spec, melbank.build_bank(config))
    return dct_mfcc(log_compress(ms, floor), source="original")


def interleave_midpoints(g):
    """``[g1, (g1+g2)/2, g2, ..., g_n, (g_n+g1)/2]`` along axis 0.

    The last midpoint wraps around to the first band.
    """
    g = np.asarray(g)
    out = np.empty((2 * g.shape[0],) + g.shape[1:])
    out[0::2] = g
    out[1::2] = (g + np.roll(g, -1, axis=0)) / 2
    return out


def reverse_add_average(spec, bank):
    """Average of forward outputs and re-reversed outputs of the reversed
    bank."""
    forward = mel_spectrum(spec, bank).values
    backward = mel_spectrum(spec, melbank.reverse_bank(bank)).values[::-1]
    return (forward + backward) / 2


def downsampled_mel_spectrum(spec, method, original_bank):
    method = BankMethod.parse(method)
    bank = melbank.transform_bank(original_bank, method)
    if method is BankMethod.D:
        values = interleave_midpoints(mel_spectrum(spec, bank).values)
    elif method in (BankMethod.E, BankMethod.F_REV):
        values = reverse_add_average(spec, bank)
    else:
        values = mel_spectrum(spec, bank).values
    return MelSpectrum(values, method)


def mfcc_downsampled(y, method, original_config, params_down,
                     floor=DEFAULT_LOG_FLOOR):
    """MFCCs of a 2x-decimated signal ``y`` with a transformed Mel bank.

    ``params_down`` must use half the original frame length.
    """
    method = BankMethod.parse(method)
    if params_down.frame_len * 2 != original_config.n_bins:
        raise SignalError(
            f"frame-length mismatch: decimated frames of "
            f"{params_down.frame_len} samples need a bank built for "
            f"{params_down.frame_len * 2} bins, got {original_config.n_bins}")
    spec = stft(y, params_down)
    ms = downsampled_mel_spectrum(spec, method,
                                  melbank.build_bank(original_config))
    return dct_mfcc(log_compress(ms, floor), source=f"type {method.label}")
