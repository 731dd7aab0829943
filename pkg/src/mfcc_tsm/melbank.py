"""
Mel scale conversion, triangular Mel filter banks, and the six bank
constructions (types A to F) used on spectra of 2x-decimated speech.
"""

import enum
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import ConfigError, UnsupportedFactorError


class BankMethod(enum.Enum):
    """How the filter bank for the decimated signal is derived."""

    A = "A"      # original centers on the half-length bin grid
    B = "B"      # centers halved
    C = "C"      # rebuilt on the halved band
    D = "D"      # alternate centers halved, outputs interleaved
    E = "E"      # reverse/add/average on the type A bank
    F_REV = "F"  # reverse/add/average on the type B bank

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper()
        if key in ("F_REV", "FREV"):
            key = "F"
        try:
            return cls(key)
        except ValueError:
            raise ConfigError(f"unknown bank method {value!r}") from None

    @property
    def label(self):
        return self.value


ALL_METHODS = tuple(BankMethod)


def hz_to_mel(f):
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise ConfigError("frequency must be non-negative")
    mel = 2595.0 * np.log10(1.0 + f / 700.0)
    return float(mel) if mel.ndim == 0 else mel


def mel_to_hz(mel):
    mel = np.asarray(mel, dtype=float)
    if np.any(mel < 0):
        raise ConfigError("mel value must be non-negative")
    hz = 700.0 * (10.0 ** (mel / 2595.0) - 1.0)
    return float(hz) if hz.ndim == 0 else hz


@dataclass(frozen=True)
class MelBankConfig:
    n_filters: int = 30
    f_min_hz: float = 130.0
    f_max_hz: float = 6800.0
    n_bins: int = 512
    bin_to_hz: float = 16000.0 / 512

    def __post_init__(self):
        if self.n_filters < 2:
            raise ConfigError("need at least 2 filters")
        if not 0 <= self.f_min_hz < self.f_max_hz:
            raise ConfigError(
                f"need 0 <= f_min < f_max, got {self.f_min_hz}, {self.f_max_hz}")
        if self.n_bins < 2:
            raise ConfigError("need at least 2 bins")
        if not self.bin_to_hz > 0:
            raise ConfigError("bin_to_hz must be positive")

    @classmethod
    def for_frames(cls, frame_len, sample_rate_hz, n_filters=30,
                   f_min_hz=130.0, f_max_hz=6800.0):
        return cls(n_filters, f_min_hz, f_max_hz, frame_len,
                   sample_rate_hz / frame_len)


@dataclass(frozen=True, eq=False)
class MelFilterBank:
    """F x K matrix of triangular filter weights.

    ``edges_hz`` holds F + 2 frequencies: the lower boundary, the F centers
    and the upper boundary.
    """

    weights: np.ndarray
    edges_hz: np.ndarray
    config: MelBankConfig
    method: BankMethod = None

    def __post_init__(self):
        for name in ("weights", "edges_hz"):
            a = np.array(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def centers_hz(self):
        return self.edges_hz[1:-1]

    @property
    def n_filters(self):
        return self.weights.shape[0]

    @property
    def n_bins(self):
        return self.weights.shape[1]


def triangular_weights(edges_hz, n_bins, bin_to_hz):
    """Evaluate the piecewise-linear triangle formula on a bin grid.

    Filter ``m`` (1-based) rises on ``[c(m-1), c(m))`` and falls on
    ``[c(m), c(m+1))``; it is zero elsewhere, so a bin exactly at
    ``c(m+1)`` gets weight 0.
    """
    edges = np.asarray(edges_hz, dtype=float)
    freqs = np.arange(n_bins) * bin_to_hz
    lo, mid, hi = edges[:-2, None], edges[1:-1, None], edges[2:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        rising = (freqs - lo) / (mid - lo)
        falling = (freqs - hi) / (mid - hi)
    weights = np.zeros((edges.size - 2, n_bins))
    up = (lo <= freqs) & (freqs < mid)
    down = (mid <= freqs) & (freqs < hi)
    weights[up] = np.broadcast_to(rising, weights.shape)[up]
    weights[down] = np.broadcast_to(falling, weights.shape)[down]
    return weights


def bank_from_edges(edges_hz, config, method=None):
    weights = triangular_weights(edges_hz, config.n_bins, config.bin_to_hz)
    return MelFilterBank(weights, edges_hz, config, method)


def mel_edges(f_min_hz, f_max_hz, n_filters):
    """Boundary and center frequencies equally spaced on the Mel scale.

    Centers sit at ``mel(f_min) + m * delta`` for m = 1..F with
    ``delta = (mel(f_max) - mel(f_min)) / (F + 1)``.
    """
    mel_min, mel_max = hz_to_mel(f_min_hz), hz_to_mel(f_max_hz)
    step = (mel_max - mel_min) / (n_filters + 1)
    centers = mel_to_hz(mel_min + step * np.arange(1, n_filters + 1))
    return np.concatenate(([f_min_hz], centers, [f_max_hz]))


def build_bank(config):
    return bank_from_edges(
        mel_edges(config.f_min_hz, config.f_max_hz, config.n_filters), config)


def transform_bank(original, method, alpha=2):
    """Filter bank for spectra of the signal decimated by ``alpha``.

    The result lives on ``S = K / alpha`` bins. Bin ``k'`` keeps the
    original spacing ``bin_to_hz``, which is also the true spacing of a
    length-S DFT at the reduced rate.
    """
    method = BankMethod.parse(method)
    if alpha != 2:
        raise UnsupportedFactorError(f"unsupported factor: alpha={alpha}")
    cfg = original.config
    if cfg.n_bins % alpha:
        raise ConfigError("bank length not divisible by alpha")
    down_cfg = replace(cfg, n_bins=cfg.n_bins // alpha)
    edges = original.edges_hz

    if method in (BankMethod.A, BankMethod.E):
        new_edges = edges
    elif method in (BankMethod.B, BankMethod.F_REV):
        new_edges = edges / alpha
    elif method is BankMethod.C:
        down_cfg = replace(down_cfg, f_min_hz=cfg.f_min_hz / alpha,
                           f_max_hz=cfg.f_max_hz / alpha)
        new_edges = mel_edges(down_cfg.f_min_hz, down_cfg.f_max_hz,
                              down_cfg.n_filters)
    else:
        n = original.n_filters
        if n % 2:
            raise ConfigError(f"type D needs an even filter count, got {n}")
        # centers 1, 3, ..., F-1 (edges index == center index)
        picked = edges[1:n:2]
        new_edges = np.concatenate(
            ([edges[0]], picked, [edges[n]])) / alpha
        down_cfg = replace(down_cfg, n_filters=n // 2)
    return bank_from_edges(new_edges, down_cfg, method)


def reverse_bank(bank):
    """Reverse filter order and mirror every row along the bin axis.

    The last (widest) filter ends up first, occupying the low bins.
    Applying it twice returns the original weights.
    """
    top = (bank.n_bins - 1) * bank.config.bin_to_hz
    return MelFilterBank(bank.weights[::-1, ::-1], top - bank.edges_hz[::-1],
                         bank.config, bank.method)
