"""Orthonormal wavelet filter pairs.

Each supported wavelet is an orthonormal quadrature-mirror pair: the
high-pass filter is the alternating flip of the low-pass filter,
``h[i] = (-1)**i * g[L-1-i]``.  Low-pass coefficients satisfy
``sum(g) == sqrt(2)``, ``sum(g**2) == 1`` and are orthonormal to their
even translates.
"""

from dataclasses import dataclass

import numpy as np

from .errors import UnknownWavelet


@dataclass(frozen=True, eq=False)
class WaveletSpec:
    """Named orthonormal wavelet with its analysis filter pair."""

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray


def _alternating_flip(lowpass: np.ndarray) -> np.ndarray:
    signs = (-1.0) ** np.arange(lowpass.size)
    return signs * lowpass[::-1]


_SQRT3 = np.sqrt(3.0)

# Minimum-phase 4-tap filter with two vanishing moments, in closed form.
_DAUB4_LOWPASS = np.array(
    [1.0 + _SQRT3, 3.0 + _SQRT3, 3.0 - _SQRT3, 1.0 - _SQRT3]
) / (4.0 * np.sqrt(2.0))

# Minimum-phase 8-tap filter with four vanishing moments.  Correctly rounded
# doubles (spectral factorization evaluated at 60 decimal digits); the widely
# reprinted 12-digit tables are not accurate enough for the 1e-12 invariants.
_DAUB8_LOWPASS = np.array(
    [
        0.2303778133088965,
        0.7148465705529157,
        0.6308807679298589,
        -0.027983769416859854,
        -0.18703481171909309,
        0.030841381835560764,
        0.0328830116668852,
        -0.010597401785069032,
    ]
)

_LOWPASS_BY_NAME = {
    "haar": np.array([1.0, 1.0]) / np.sqrt(2.0),
    "daub4": _DAUB4_LOWPASS,
    "daub8": _DAUB8_LOWPASS,
}

SUPPORTED_WAVELETS = tuple(sorted(_LOWPASS_BY_NAME))


def wavelet_filters(name: str) -> WaveletSpec:
    """Return the filter pair for a named wavelet.

    Parameters
    ----------
    name : str
        One of ``haar``, ``daub4``, ``daub8`` (case-insensitive).

    Raises
    ------
    UnknownWavelet
        If the name is not in the supported set.
    """
    key = str(name).strip().lower()
    try:
        lowpass = _LOWPASS_BY_NAME[key]
    except KeyError:
        raise UnknownWavelet(
            f"unknown wavelet {name!r}; supported: {', '.join(SUPPORTED_WAVELETS)}"
        ) from None
    return WaveletSpec(name=key, lowpass=lowpass.copy(), highpass=_alternating_flip(lowpass))
