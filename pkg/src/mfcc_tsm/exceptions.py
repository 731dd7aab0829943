"""Exception hierarchy shared by the library and the command-line driver."""


class MfccTsmError(Exception):
    """Base class for every error raised by this package."""


class SignalError(MfccTsmError, ValueError):
    """A signal or framing parameter is unusable (e.g. too short)."""


class ConfigError(MfccTsmError, ValueError):
    """A filter bank or pipeline configuration violates its invariants."""


class UnsupportedFactorError(ConfigError):
    """Only a scaling factor of 2 is supported by the bank transforms."""


class DegenerateVectorError(MfccTsmError, ValueError):
    """Correlation is undefined because one vector has zero variance."""


class WavError(MfccTsmError):
    """Base class for WAV parsing failures."""


class MalformedHeaderError(WavError):
    pass


class UnsupportedCodecError(WavError):
    pass


class UnsupportedBitDepthError(WavError):
    pass
