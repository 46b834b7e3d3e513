"""Periodized orthonormal discrete wavelet transform.

All boundary handling is circular (modular indexing), which is what makes
the shift-averaged decomposition reconstruct exactly.  The analysis
convention is fixed: circular correlation with the filter origin at index 0,
keeping even output indices.  ``reconstruct_detail`` and
``reconstruct_approx`` project a signal onto a single scale subspace and
return a full-length signal.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidCoeffs, InvalidLength, InvalidLevels, InvalidScale
from .wavelets import WaveletSpec


def as_signal(x) -> np.ndarray:
    """Coerce to a 1-D float64 array and validate it as a signal."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidLength(f"expected a 1-D signal, got shape {arr.shape}")
    if arr.size < 2:
        raise InvalidLength(f"signal must have at least 2 samples, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InvalidLength("signal contains non-finite samples")
    return arr


def max_levels(n: int) -> int:
    """Number of decomposition levels supported by length ``n``.

    This is the 2-adic valuation of ``n`` (how many times ``n`` halves
    evenly); for a power of two it equals ``log2(n)``.

    Raises
    ------
    InvalidLength
        If ``n`` is odd or smaller than 2 (no level exists).
    """
    n = int(n)
    if n < 2 or n % 2 != 0:
        raise InvalidLength(f"length {n} admits no decomposition level (need even n >= 2)")
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k


@dataclass(eq=False)
class WaveletCoeffs:
    """Decimated coefficients of a k-level periodized transform.

    ``details[j]`` holds the level ``j+1`` detail coefficients (length
    ``n / 2**(j+1)``); ``approx`` is the final approximation (length
    ``n / 2**k``).
    """

    n: int
    k: int
    details: list[np.ndarray]
    approx: np.ndarray


def _analyze_level(x: np.ndarray, taps: np.ndarray) -> np.ndarray:
    # Circular correlation, origin at 0, keep even indices.  np.resize tiles
    # the signal, which stays correct even when the filter outgrows it.
    ext = np.resize(x, x.size + taps.size - 1)
    return np.correlate(ext, taps, mode="valid")[::2]


def _synthesize_level(coarse: np.ndarray, taps: np.ndarray) -> np.ndarray:
    # One synthesis branch: upsample by 2, then circular convolution.
    nn = 2 * coarse.size
    up = np.zeros(nn)
    up[0::2] = coarse
    ext = np.resize(np.roll(up, taps.size - 1), nn + taps.size - 1)
    return np.convolve(ext, taps, mode="valid")


def dwt_periodic(signal, wavelet: WaveletSpec, levels: int | None = None) -> WaveletCoeffs:
    """Forward k-level periodized transform.

    Parameters
    ----------
    signal : array_like
        Real samples; the length must be divisible by ``2**levels``.
    wavelet : WaveletSpec
        Analysis filter pair.
    levels : int, optional
        Decomposition depth; defaults to ``max_levels(n)``.

    Raises
    ------
    InvalidLevels
        If ``levels`` exceeds what the length supports.
    """
    x = as_signal(signal)
    kmax = max_levels(x.size)
    k = kmax if levels is None else int(levels)
    if k < 1 or k > kmax:
        raise InvalidLevels(f"levels={k} not supported for length {x.size} (max {kmax})")
    details: list[np.ndarray] = []
    cur = x
    for _ in range(k):
        details.append(_analyze_level(cur, wavelet.highpass))
        cur = _analyze_level(cur, wavelet.lowpass)
    return WaveletCoeffs(n=x.size, k=k, details=details, approx=cur)


def _check_coeffs(coeffs: WaveletCoeffs) -> None:
    n, k = coeffs.n, coeffs.k
    if k < 1 or n < 2 or n % (1 << k) != 0:
        raise InvalidCoeffs(f"inconsistent shape metadata (n={n}, k={k})")
    if len(coeffs.details) != k:
        raise InvalidCoeffs(f"expected {k} detail vectors, got {len(coeffs.details)}")
    for j, d in enumerate(coeffs.details):
        if np.asarray(d).shape != (n >> (j + 1),):
            raise InvalidCoeffs(f"detail level {j + 1} has shape {np.shape(d)}, expected ({n >> (j + 1)},)")
    if np.asarray(coeffs.approx).shape != (n >> k,):
        raise InvalidCoeffs(f"approx has shape {np.shape(coeffs.approx)}, expected ({n >> k},)")


def idwt_periodic(coeffs: WaveletCoeffs, wavelet: WaveletSpec) -> np.ndarray:
    """Exact inverse of :func:`dwt_periodic`."""
    _check_coeffs(coeffs)
    cur = np.asarray(coeffs.approx, dtype=np.float64)
    for d in reversed(coeffs.details):
        cur = _synthesize_level(cur, wavelet.lowpass) + _synthesize_level(
            np.asarray(d, dtype=np.float64), wavelet.highpass
        )
    return cur


def reconstruct_detail(coeffs: WaveletCoeffs, wavelet: WaveletSpec, s: int) -> np.ndarray:
    """Project onto the detail subspace at scale ``s`` (1-based).

    Equivalent to inverting the transform with every coefficient vector
    except ``details[s-1]`` zeroed.
    """
    _check_coeffs(coeffs)
    if not 1 <= s <= coeffs.k:
        raise InvalidScale(f"scale {s} outside 1..{coeffs.k}")
    kept = [
        d if j == s - 1 else np.zeros_like(d)
        for j, d in enumerate(coeffs.details)
    ]
    zeroed = WaveletCoeffs(coeffs.n, coeffs.k, kept, np.zeros_like(coeffs.approx))
    return idwt_periodic(zeroed, wavelet)


def reconstruct_approx(coeffs: WaveletCoeffs, wavelet: WaveletSpec) -> np.ndarray:
    """Project onto the approximation subspace at the deepest level.

    Together with the per-scale details this is a complete decomposition:
    ``reconstruct_approx + sum_s reconstruct_detail(s)`` recovers the
    original signal.
    """
    _check_coeffs(coeffs)
    zeroed = WaveletCoeffs(
        coeffs.n,
        coeffs.k,
        [np.zeros_like(d) for d in coeffs.details],
        coeffs.approx,
    )
    return idwt_periodic(zeroed, wavelet)
