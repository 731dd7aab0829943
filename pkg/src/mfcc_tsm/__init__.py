"""MFCC features of original and 2x-decimated speech, six Mel-bank
transforms for the decimated case, and correlation-based comparison."""

from .analysis import (CorrelationReport, PipelineConfig, case1_correlation,
                       case2_correlation, compare_methods, pearson)
from .estimators import (BankMethodSelector, DownsampledMFCCTransformer,
                         MFCCTransformer)
from .melbank import (BankMethod, MelBankConfig, MelFilterBank, build_bank,
                      hz_to_mel, mel_to_hz, reverse_bank, transform_bank)
from .mfcc import (MelSpectrum, MfccMatrix, dct_mfcc, log_compress,
                   mel_spectrum, mfcc_downsampled, mfcc_pipeline)
from .signal import (FrameParams, ResampleSpec, Signal, Spectrogram, Window,
                     alias_spectrum, apply_window, decimate, dft, frame_signal,
                     interpolate_zeros, resample, stft)

__version__ = "0.1.0"
