"""Shift-invariant multiscale decomposition by cycle-averaged wavelet projections.

The decomposition averages per-scale wavelet detail projections over all
circular shifts of the input, giving a linear, circularly shift-invariant
set of full-length scale spectra that sum back to the signal.  Being linear
and shift invariant, the transform is equally computable by circular
convolution with a derived FIR filter bank (one kernel per scale); both
paths are provided, in 1-D and 2-D.
"""

from .analysis import (
    CheckResult,
    SubstructureResult,
    VerificationReport,
    awt_shift_variance,
    substructure_experiment,
    verify_transform,
    wt_shift_variance,
)
from .bankfile import BankCache, load_bank, save_bank
from .dwt import (
    WaveletCoeffs,
    dwt_periodic,
    idwt_periodic,
    max_levels,
    reconstruct_approx,
    reconstruct_detail,
)
from .errors import (
    AwtError,
    BankMismatch,
    CorruptBank,
    FormatError,
    InvalidCoeffs,
    InvalidLength,
    InvalidLevels,
    InvalidScale,
    InvalidSpectra,
    InvalidWindow,
    UnknownWavelet,
)
from .filterbank import (
    AwtFilterBank,
    FilterBank2D,
    awt2d_fft,
    awt_fft,
    derive_filter_bank,
    derive_filter_bank_2d,
    effective_support,
    haar_closed_form_filter,
)
from .reference import (
    ScaleSpectra,
    ScaleSpectra2D,
    awt2d_full_naive,
    awt_full_naive,
    awt_scale_naive,
    circular_shift,
    inverse_awt,
    inverse_awt2d,
)
from .wavelets import SUPPORTED_WAVELETS, WaveletSpec, wavelet_filters

__version__ = "0.1.0"

__all__ = [
    "AwtError",
    "AwtFilterBank",
    "BankCache",
    "BankMismatch",
    "CheckResult",
    "CorruptBank",
    "FilterBank2D",
    "FormatError",
    "InvalidCoeffs",
    "InvalidLength",
    "InvalidLevels",
    "InvalidScale",
    "InvalidSpectra",
    "InvalidWindow",
    "ScaleSpectra",
    "ScaleSpectra2D",
    "SUPPORTED_WAVELETS",
    "SubstructureResult",
    "UnknownWavelet",
    "VerificationReport",
    "WaveletCoeffs",
    "WaveletSpec",
    "awt2d_fft",
    "awt2d_full_naive",
    "awt_fft",
    "awt_full_naive",
    "awt_scale_naive",
    "awt_shift_variance",
    "circular_shift",
    "derive_filter_bank",
    "derive_filter_bank_2d",
    "dwt_periodic",
    "effective_support",
    "haar_closed_form_filter",
    "idwt_periodic",
    "inverse_awt",
    "inverse_awt2d",
    "load_bank",
    "max_levels",
    "reconstruct_approx",
    "reconstruct_detail",
    "save_bank",
    "substructure_experiment",
    "verify_transform",
    "wavelet_filters",
    "wt_shift_variance",
]
