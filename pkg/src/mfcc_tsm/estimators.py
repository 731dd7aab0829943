"""
scikit-learn style wrappers around the MFCC pipelines.

Each transformer takes one signal (1-D array) or a list of signals and
returns an array of shape (n_frames, n_coefficients) per signal, so the
output rows are observations as scikit-learn expects.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import PipelineConfig, compare_methods
from .exceptions import ConfigError, UnsupportedFactorError
from .melbank import ALL_METHODS, BankMethod, MelBankConfig, build_bank
from .mfcc import DEFAULT_LOG_FLOOR, mfcc_downsampled, mfcc_pipeline
from .signal import FrameParams, Signal, Window, decimate


def check_signal(x, sample_rate):
    x = check_array(x, ensure_2d=False, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-D signal, got shape {x.shape}")
    return Signal(x, sample_rate)


def _signals(X):
    """Split ``X`` into a list of 1-D signals and remember if it was one."""
    if isinstance(X, np.ndarray) and X.ndim == 1:
        return [X], True
    if isinstance(X, (list, tuple)) and X and np.ndim(X[0]) == 0:
        return [np.asarray(X)], True
    return list(X), False


class MFCCTransformer(BaseEstimator, TransformerMixin):
    """MFCCs of full-rate signals with the standard Mel bank.

    Parameters mirror the pipeline: ``frame_len``/``hop`` in samples,
    ``window`` one of ``"paper"``, ``"standard"``, ``"rect"``.
    """

    def __init__(self, sample_rate=16000, frame_len=512, hop=256,
                 window="paper", n_filters=30, f_min=130.0, f_max=6800.0,
                 log_floor=DEFAULT_LOG_FLOOR):
        self.sample_rate = sample_rate
        self.frame_len = frame_len
        self.hop = hop
        self.window = window
        self.n_filters = n_filters
        self.f_min = f_min
        self.f_max = f_max
        self.log_floor = log_floor

    def _validate_params(self):
        if not self.log_floor > 0:
            raise ConfigError("log_floor must be positive")
        self.frame_params_ = FrameParams(self.frame_len, self.hop,
                                         Window(self.window))
        self.bank_config_ = MelBankConfig.for_frames(
            self.frame_len, self.sample_rate, self.n_filters, self.f_min,
            self.f_max)

    def fit(self, X=None, y=None):
        self._validate_params()
        self.bank_ = build_bank(self.bank_config_)
        self.n_features_out_ = self.n_filters
        return self

    def _one(self, x):
        signal = check_signal(x, self.sample_rate)
        return mfcc_pipeline(signal, self.frame_params_, self.bank_config_,
                             self.log_floor).coeffs.T

    def transform(self, X):
        check_is_fitted(self, "bank_")
        signals, single = _signals(X)
        out = [self._one(x) for x in signals]
        return out[0] if single else out


class DownsampledMFCCTransformer(MFCCTransformer):
    """MFCCs of the 2x-decimated signal using a transformed Mel bank.

    Input signals are at ``sample_rate``; they are decimated (no filter)
    before analysis with half-length frames. ``method`` is one of
    ``"A"`` .. ``"F"``.
    """

    def __init__(self, method="A", sample_rate=16000, frame_len=512,
                 hop=256, window="paper", n_filters=30, f_min=130.0,
                 f_max=6800.0, log_floor=DEFAULT_LOG_FLOOR, alpha=2):
        super().__init__(sample_rate, frame_len, hop, window, n_filters,
                         f_min, f_max, log_floor)
        self.method = method
        self.alpha = alpha

    def fit(self, X=None, y=None):
        super().fit(X, y)
        self.method_ = BankMethod.parse(self.method)
        if self.alpha != 2:
            raise UnsupportedFactorError(f"unsupported factor: alpha={self.alpha}")
        self.frame_params_down_ = self.frame_params_.scaled(self.alpha)
        return self

    def _one(self, x):
        y = decimate(check_signal(x, self.sample_rate), self.alpha)
        return mfcc_downsampled(y, self.method_, self.bank_config_,
                                self.frame_params_down_,
                                self.log_floor).coeffs.T


class BankMethodSelector(MFCCTransformer):
    """Pick the bank method whose decimated-signal MFCCs correlate best
    with the full-rate MFCCs (mean concatenated r over the fitted signals).

    After ``fit``, ``transform`` behaves like
    :class:`DownsampledMFCCTransformer` with ``best_method_``.
    """

    def __init__(self, methods=("A", "B", "C", "D", "E", "F"),
                 sample_rate=16000, frame_len=512, hop=256, window="paper",
                 n_filters=30, f_min=130.0, f_max=6800.0,
                 log_floor=DEFAULT_LOG_FLOOR):
        super().__init__(sample_rate, frame_len, hop, window, n_filters,
                         f_min, f_max, log_floor)
        self.methods = methods

    def fit(self, X, y=None):
        super().fit(X, y)
        config = PipelineConfig(self.frame_len, self.hop, Window(self.window),
                                self.n_filters, self.f_min, self.f_max,
                                self.log_floor,
                                methods=self.methods or ALL_METHODS)
        signals, _ = _signals(X)
        self.reports_ = [compare_methods(check_signal(x, self.sample_rate),
                                         config) for x in signals]
        scores = np.array([[r.concatenated_r for r in reps]
                           for reps in self.reports_])
        self.methods_ = config.methods
        self.scores_ = dict(zip((m.label for m in self.methods_),
                                scores.mean(axis=0)))
        self.best_method_ = self.methods_[int(np.argmax(scores.mean(axis=0)))]
        base = {k: getattr(self, k) for k in MFCCTransformer._get_param_names()}
        self.downsampler_ = DownsampledMFCCTransformer(self.best_method_.label,
                                                **base).fit()
        return self

    def transform(self, X):
        check_is_fitted(self, "best_method_")
        return self.downsampler_.transform(X)
