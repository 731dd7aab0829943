"""
Time-domain operations: framing, windowing, DFT, short-time spectra and
integer/rational resampling.

All functions are pure and return new arrays; inputs are never modified.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import firwin

from .exceptions import SignalError


class Window(enum.Enum):
    PAPER_HAMMING = "paper"
    STANDARD_HAMMING = "standard"
    RECTANGULAR = "rect"


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Signal:
    """Mono sampled signal. Samples are stored as a read-only float array."""

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        samples = _frozen(self.samples)
        if samples.ndim != 1 or samples.size < 1:
            raise SignalError("signal must be a non-empty 1-D sequence")
        if not self.sample_rate_hz > 0:
            raise SignalError("sample rate must be positive")
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return self.samples.size

    @property
    def duration_s(self):
        return self.samples.size / self.sample_rate_hz


@dataclass(frozen=True)
class FrameParams:
    frame_len: int
    hop: int
    window: Window = Window.PAPER_HAMMING

    def __post_init__(self):
        if self.frame_len < 1 or self.hop < 1 or self.hop > self.frame_len:
            raise SignalError(
                f"need 0 < hop <= frame_len, got hop={self.hop}, "
                f"frame_len={self.frame_len}")
        if self.frame_len % 2:
            raise SignalError(f"frame_len must be even, got {self.frame_len}")
        object.__setattr__(self, "window", Window(self.window))

    @classmethod
    def half_overlap(cls, frame_len, window=Window.PAPER_HAMMING):
        return cls(frame_len, frame_len // 2, window)

    def scaled(self, alpha):
        """Frame parameters for a signal decimated by ``alpha``."""
        if self.frame_len % alpha or self.hop % alpha:
            raise SignalError(f"frame_len/hop not divisible by {alpha}")
        return FrameParams(self.frame_len // alpha, self.hop // alpha,
                           self.window)


@dataclass(frozen=True)
class Spectrogram:
    """Complex STFT matrix (K bins x P frames) and its magnitudes."""

    bins: np.ndarray
    frame_params: FrameParams
    sample_rate_hz: float
    magnitudes: np.ndarray = field(init=False)

    def __post_init__(self):
        bins = _frozen(self.bins, complex)
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "magnitudes", _frozen(np.abs(bins)))

    @property
    def n_bins(self):
        return self.bins.shape[0]

    @property
    def n_frames(self):
        return self.bins.shape[1]

    def bin_frequencies(self):
        """Frequency in Hz of each bin index, ``k * fs / N``."""
        return np.arange(self.n_bins) * self.sample_rate_hz / self.n_bins


@dataclass(frozen=True)
class ResampleSpec:
    up: int = 1
    down: int = 1
    anti_alias: bool = False

    def __post_init__(self):
        if self.up < 1 or self.down < 1:
            raise SignalError("resampling factors must be positive integers")

    @property
    def alpha(self):
        """Time-scale factor: output sample s reads input position alpha*s."""
        return self.down / self.up


def _as_signal(signal, sample_rate_hz=None):
    if isinstance(signal, Signal):
        return signal
    return Signal(np.asarray(signal, dtype=float), sample_rate_hz or 1.0)


def n_frames(n_samples, frame_len, hop):
    if n_samples < frame_len:
        raise SignalError(
            f"signal too short: {n_samples} samples < frame length {frame_len}")
    return (n_samples - frame_len) // hop + 1


def frame_signal(signal, params):
    """Split ``signal`` into overlapping frames.

    Frame ``p`` starts at sample ``p * hop``; trailing samples that do not
    fill a whole frame are dropped.

    Returns
    -------
    frames : ndarray, shape (P, frame_len)
    """
    x = _as_signal(signal).samples
    count = n_frames(x.size, params.frame_len, params.hop)
    view = np.lib.stride_tricks.sliding_window_view(x, params.frame_len)
    return view[::params.hop][:count].copy()


def window_weights(n, window=Window.PAPER_HAMMING):
    window = Window(window)
    idx = np.arange(n)
    if window is Window.PAPER_HAMMING:
        # half-period variant, cos(n*pi/N), kept as published
        return 0.54 - 0.46 * np.cos(idx * np.pi / n)
    if window is Window.STANDARD_HAMMING:
        if n == 1:
            return np.ones(1)
        return 0.54 - 0.46 * np.cos(2 * np.pi * idx / (n - 1))
    return np.ones(n)


def apply_window(frame, window=Window.PAPER_HAMMING):
    frame = np.asarray(frame, dtype=float)
    return frame * window_weights(frame.shape[-1], window)


def dft(frame):
    """DFT ``X(k) = sum_n x[n] exp(-2j*pi*k*n/N)`` along the last axis.

    No window is applied here. Computed with an FFT.
    """
    return np.fft.fft(np.asarray(frame), axis=-1)


def stft(signal, params):
    """Short-time spectrum of ``signal``; column ``p`` is the DFT of frame p."""
    signal = _as_signal(signal)
    frames = frame_signal(signal, params)
    bins = dft(apply_window(frames, params.window)).T
    return Spectrogram(bins, params, signal.sample_rate_hz)


def decimate(signal, q):
    """Keep every ``q``-th sample, without any pre-filtering.

    Aliasing is intentional: the spectral folding identity used by
    :func:`alias_spectrum` only holds for plain subsampling.
    """
    if q < 1:
        raise SignalError("decimation factor must be >= 1")
    signal = _as_signal(signal)
    return Signal(signal.samples[::q], signal.sample_rate_hz / q)


def interpolate_zeros(signal, p):
    """Insert ``p - 1`` zeros after every sample."""
    if p < 1:
        raise SignalError("interpolation factor must be >= 1")
    signal = _as_signal(signal)
    out = np.zeros(signal.samples.size * p)
    out[::p] = signal.samples
    return Signal(out, signal.sample_rate_hz * p)


ANTI_ALIAS_TAPS = 63


def anti_alias_taps(p, q, numtaps=ANTI_ALIAS_TAPS):
    """Hamming windowed-sinc low-pass at ``min(pi/p, pi/q)``, unity DC gain."""
    return firwin(numtaps, 1.0 / max(p, q), window="hamming")


def resample(signal, spec):
    """Rational resampling: zero-insert by ``spec.up``, then decimate by
    ``spec.down``. The optional low-pass sits between the two stages."""
    up = interpolate_zeros(signal, spec.up)
    if spec.anti_alias:
        taps = anti_alias_taps(spec.up, spec.down)
        delay = (taps.size - 1) // 2
        filtered = np.convolve(up.samples, taps)[delay:delay + up.samples.size]
        up = Signal(filtered, up.sample_rate_hz)
    return decimate(up, spec.down)


def alias_spectrum(spectrum, alpha):
    """Predicted DFT of a frame subsampled by integer ``alpha``.

    ``Y(k') = (1/alpha) * sum_l X(k' + l*S)`` with ``S = N / alpha``.
    Works along the last axis.
    """
    X = np.asarray(spectrum)
    n = X.shape[-1]
    if alpha < 1 or n % alpha:
        raise SignalError(f"alpha={alpha} does not divide N={n}")
    folded = X.reshape(X.shape[:-1] + (alpha, n // alpha))
    return folded.sum(axis=-2) / alpha


def samples_for(duration_ms, sample_rate_hz):
    """Convert a duration in milliseconds to a whole number of samples."""
    return int(math.floor(duration_ms * sample_rate_hz / 1000.0 + 0.5))
