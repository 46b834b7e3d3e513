"""Exception types shared across the package.

Every domain error carries a stable ``code`` string so the HTTP service and
the CLI can map failures without string-matching messages.
"""


class AwtError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "AwtError"


class InvalidLength(AwtError):
    """Signal or image length does not admit the requested decomposition."""

    code = "InvalidLength"


class InvalidLevels(AwtError):
    """Requested level count is not supported by the input length."""

    code = "InvalidLevels"


class InvalidScale(AwtError):
    """Scale index outside the decomposition's valid range."""

    code = "InvalidScale"


class InvalidCoeffs(AwtError):
    """Wavelet coefficient shapes are mutually inconsistent."""

    code = "InvalidCoeffs"


class InvalidSpectra(AwtError):
    """Scale spectra have mismatched lengths."""

    code = "InvalidSpectra"


class InvalidWindow(AwtError):
    """Empty or out-of-range sample window."""

    code = "InvalidWindow"


class UnknownWavelet(AwtError):
    """Wavelet name outside the supported set."""

    code = "UnknownWavelet"


class BankMismatch(AwtError):
    """Filter bank size does not match the input size."""

    code = "BankMismatch"


class CorruptBank(AwtError):
    """Filter-bank cache file failed structural validation."""

    code = "CorruptBank"


class FormatError(AwtError):
    """Malformed input file (CSV, PGM or raw sidecar)."""

    code = "FormatError"
