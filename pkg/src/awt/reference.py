"""Shift-averaged multiscale decomposition computed literally, 1-D and 2-D.

This is the ground-truth path: for every circular shift of the input, take
the periodized wavelet transform, reconstruct the projection at each scale,
undo the shift, and average.  The result is linear and circularly shift
invariant, decomposes the signal into a DC component plus zero-mean scale
spectra, and sums back to the input exactly.

The cost is quadratic in the number of samples; the equivalent fast path
lives in :mod:`awt.filterbank`.  Shift accumulation runs in sequential
order i = 0..n-1 so results are bit-reproducible.
"""

from dataclasses import dataclass

import numpy as np

from .dwt import (
    WaveletCoeffs,
    as_signal,
    dwt_periodic,
    max_levels,
    reconstruct_approx,
    reconstruct_detail,
)
from .errors import InvalidLength, InvalidScale, InvalidSpectra
from .wavelets import WaveletSpec


def as_image(img) -> np.ndarray:
    """Coerce to a 2-D float64 array and validate it as an image."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidLength(f"expected a 2-D image, got shape {arr.shape}")
    if arr.shape[0] < 2 or arr.shape[1] < 2:
        raise InvalidLength(f"image must be at least 2x2, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidLength("image contains non-finite samples")
    return arr


def circular_shift(x, i: int) -> np.ndarray:
    """Circular right shift by ``i`` positions: output[(j+i) mod n] = x[j]."""
    return np.roll(as_signal(x), int(i))


@dataclass(eq=False)
class ScaleSpectra:
    """Complete 1-D decomposition: DC component plus k scale spectra.

    All k+1 vectors have the input's length; ``spectra[s-1]`` is the scale-s
    spectrum.  Storage is (k+1)*n values.
    """

    n: int
    k: int
    dc: np.ndarray
    spectra: list[np.ndarray]
    wavelet_name: str


@dataclass(eq=False)
class ScaleSpectra2D:
    """Complete 2-D decomposition: DC image plus k scale-spectrum images."""

    height: int
    width: int
    k: int
    dc: np.ndarray
    spectra: list[np.ndarray]
    wavelet_name: str


def awt_scale_naive(x, wavelet: WaveletSpec, s: int) -> np.ndarray:
    """Average the aligned scale-``s`` projections over all circular shifts.

    ``s = 0`` denotes the DC component (full-depth approximation); scales
    1..k are the detail projections.  Cost is O(n^2 log n); this is the
    oracle, not the fast path.
    """
    arr = as_signal(x)
    n = arr.size
    k = max_levels(n)
    s = int(s)
    if not 0 <= s <= k:
        raise InvalidScale(f"scale {s} outside 0..{k} for length {n}")
    depth = k if s == 0 else s
    acc = np.zeros(n)
    for i in range(n):
        coeffs = dwt_periodic(np.roll(arr, i), wavelet, depth)
        if s == 0:
            proj = reconstruct_approx(coeffs, wavelet)
        else:
            proj = reconstruct_detail(coeffs, wavelet, s)
        acc += np.roll(proj, -i)
    return acc / n


def awt_full_naive(x, wavelet: WaveletSpec) -> ScaleSpectra:
    """Full decomposition by explicit shift averaging.

    One pass over the n shifts shares each shifted transform across all
    scales.
    """
    arr = as_signal(x)
    n = arr.size
    k = max_levels(n)
    dc = np.zeros(n)
    spectra = [np.zeros(n) for _ in range(k)]
    for i in range(n):
        coeffs = dwt_periodic(np.roll(arr, i), wavelet, k)
        dc += np.roll(reconstruct_approx(coeffs, wavelet), -i)
        for s in range(1, k + 1):
            spectra[s - 1] += np.roll(reconstruct_detail(coeffs, wavelet, s), -i)
    dc /= n
    for v in spectra:
        v /= n
    return ScaleSpectra(n=n, k=k, dc=dc, spectra=spectra, wavelet_name=wavelet.name)


def inverse_awt(spectra: ScaleSpectra) -> np.ndarray:
    """Reconstruct the signal: elementwise sum of DC and all scale spectra."""
    n = spectra.n
    vecs = [np.asarray(spectra.dc, dtype=np.float64)]
    vecs += [np.asarray(v, dtype=np.float64) for v in spectra.spectra]
    if len(vecs) != spectra.k + 1 or any(v.shape != (n,) for v in vecs):
        raise InvalidSpectra(
            f"expected {spectra.k + 1} vectors of length {n}, got shapes "
            f"{[v.shape for v in vecs]}"
        )
    out = vecs[0].copy()
    for v in vecs[1:]:
        out += v
    return out


def inverse_awt2d(spectra: ScaleSpectra2D) -> np.ndarray:
    """2-D reconstruction: elementwise sum of DC and all scale spectra."""
    shape = (spectra.height, spectra.width)
    mats = [np.asarray(spectra.dc, dtype=np.float64)]
    mats += [np.asarray(m, dtype=np.float64) for m in spectra.spectra]
    if len(mats) != spectra.k + 1 or any(m.shape != shape for m in mats):
        raise InvalidSpectra(
            f"expected {spectra.k + 1} images of shape {shape}, got "
            f"{[m.shape for m in mats]}"
        )
    out = mats[0].copy()
    for m in mats[1:]:
        out += m
    return out


# --- separable 2-D periodized transform -----------------------------------

def _analyze_cols(X: np.ndarray, taps: np.ndarray) -> np.ndarray:
    # Circular correlation along axis 1, origin 0, keep even columns.
    w = X.shape[1]
    ext = np.take(X, np.arange(w + taps.size - 1) % w, axis=1)
    out = np.zeros((X.shape[0], w // 2))
    for i, t in enumerate(taps):
        out += t * ext[:, i : i + w : 2]
    return out


def _synthesize_cols(coarse: np.ndarray, taps: np.ndarray) -> np.ndarray:
    nn = 2 * coarse.shape[1]
    up = np.zeros((coarse.shape[0], nn))
    up[:, 0::2] = coarse
    idx = (np.arange(nn + taps.size - 1) - (taps.size - 1)) % nn
    ext = np.take(up, idx, axis=1)
    out = np.zeros((coarse.shape[0], nn))
    L = taps.size
    for i, t in enumerate(taps):
        out += t * ext[:, L - 1 - i : L - 1 - i + nn]
    return out


@dataclass(eq=False)
class _Coeffs2D:
    height: int
    width: int
    k: int
    # per level: (detail from row-highpass/col-lowpass, row-lowpass/col-highpass,
    # highpass both); shapes halve per level
    details: list[tuple[np.ndarray, np.ndarray, np.ndarray]]
    approx: np.ndarray


def dwt2_periodic(img, wavelet: WaveletSpec, levels: int | None = None) -> _Coeffs2D:
    arr = as_image(img)
    h, w = arr.shape
    kmax = min(max_levels(h), max_levels(w))
    k = kmax if levels is None else int(levels)
    if k < 1 or k > kmax:
        raise InvalidLength(f"levels={k} not supported for shape {arr.shape} (max {kmax})")
    details = []
    cur = arr
    for _ in range(k):
        lo = _analyze_cols(cur, wavelet.lowpass)
        hi = _analyze_cols(cur, wavelet.highpass)
        ll = _analyze_cols(lo.T, wavelet.lowpass).T
        lh = _analyze_cols(lo.T, wavelet.highpass).T
        hl = _analyze_cols(hi.T, wavelet.lowpass).T
        hh = _analyze_cols(hi.T, wavelet.highpass).T
        details.append((hl, lh, hh))
        cur = ll
    return _Coeffs2D(height=h, width=w, k=k, details=details, approx=cur)


def idwt2_periodic(coeffs: _Coeffs2D, wavelet: WaveletSpec) -> np.ndarray:
    cur = coeffs.approx
    for hl, lh, hh in reversed(coeffs.details):
        lo = _synthesize_cols(cur.T, wavelet.lowpass).T + _synthesize_cols(
            lh.T, wavelet.highpass
        ).T
        hi = _synthesize_cols(hl.T, wavelet.lowpass).T + _synthesize_cols(
            hh.T, wavelet.highpass
        ).T
        cur = _synthesize_cols(lo, wavelet.lowpass) + _synthesize_cols(hi, wavelet.highpass)
    return cur


def _zeros_like_coeffs(coeffs: _Coeffs2D) -> _Coeffs2D:
    return _Coeffs2D(
        coeffs.height,
        coeffs.width,
        coeffs.k,
        [tuple(np.zeros_like(b) for b in lvl) for lvl in coeffs.details],
        np.zeros_like(coeffs.approx),
    )


def _reconstruct_detail_2d(coeffs: _Coeffs2D, wavelet: WaveletSpec, s: int) -> np.ndarray:
    # All three orientation subbands of level s, combined into one image.
    kept = _zeros_like_coeffs(coeffs)
    kept.details[s - 1] = coeffs.details[s - 1]
    return idwt2_periodic(kept, wavelet)


def _reconstruct_approx_2d(coeffs: _Coeffs2D, wavelet: WaveletSpec) -> np.ndarray:
    kept = _zeros_like_coeffs(coeffs)
    kept.approx = coeffs.approx
    return idwt2_periodic(kept, wavelet)


def awt2d_full_naive(img, wavelet: WaveletSpec, levels: int | None = None) -> ScaleSpectra2D:
    """2-D decomposition by averaging over all h*w circular shifts.

    Each scale spectrum combines the three orientation subbands of its
    level into a single image.  Depth defaults to the maximum both axes
    support.  Cost is O((h*w)^2 * k); intended for small images (the
    oracle for the fast path).
    """
    arr = as_image(img)
    h, w = arr.shape
    kmax = min(max_levels(h), max_levels(w))
    k = kmax if levels is None else int(levels)
    if k < 1 or k > kmax:
        raise InvalidLength(f"levels={k} not supported for shape {arr.shape} (max {kmax})")
    dc = np.zeros((h, w))
    spectra = [np.zeros((h, w)) for _ in range(k)]
    for dy in range(h):
        for dx in range(w):
            shifted = np.roll(arr, (dy, dx), axis=(0, 1))
            coeffs = dwt2_periodic(shifted, wavelet, k)
            dc += np.roll(_reconstruct_approx_2d(coeffs, wavelet), (-dy, -dx), axis=(0, 1))
            for s in range(1, k + 1):
                spectra[s - 1] += np.roll(
                    _reconstruct_detail_2d(coeffs, wavelet, s), (-dy, -dx), axis=(0, 1)
                )
    count = h * w
    dc /= count
    for m in spectra:
        m /= count
    return ScaleSpectra2D(
        height=h, width=w, k=k, dc=dc, spectra=spectra, wavelet_name=wavelet.name
    )
