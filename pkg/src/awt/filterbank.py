"""Filter-bank emulation of the shift-averaged decomposition.

The averaged transform is linear and circularly shift invariant, so each
scale is fully determined by one impulse response.  Banks are derived once
per (wavelet, size) by pushing an impulse through the naive averaging path,
then any signal is decomposed by circular convolution, done here in the
frequency domain.

For the Haar wavelet on power-of-two lengths the detail kernels have a
closed form: dyadic dilations of a piecewise-linear hat profile, wrapped
circularly.

2-D banks are built separably: the shift average of a tensor-product
projector factors into an outer product of 1-D averaged projectors, so each
2-D kernel is a difference of outer products of cumulative 1-D low-pass
kernels.  This construction is validated against the naive 2-D oracle in
the test suite.
"""

from dataclasses import dataclass, field

import numpy as np

from .dwt import as_signal, max_levels
from .errors import BankMismatch, InvalidLength, InvalidScale
from .reference import ScaleSpectra, ScaleSpectra2D, as_image, awt_full_naive
from .wavelets import WaveletSpec


@dataclass(eq=False)
class AwtFilterBank:
    """Per-(wavelet, n) circular impulse responses, one per scale.

    Kernels are stored with the origin at index 0 and circular indexing;
    centered presentation is a display concern.  ``filters[s-1]`` is the
    scale-s kernel.
    """

    n: int
    k: int
    wavelet_name: str
    dc_filter: np.ndarray
    filters: list[np.ndarray]
    _kernel_rfft: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        stack = np.vstack([self.dc_filter] + list(self.filters))
        self._kernel_rfft = np.fft.rfft(stack, axis=1)


@dataclass(eq=False)
class FilterBank2D:
    """Per-(wavelet, h, w) circular 2-D kernels, one per scale."""

    height: int
    width: int
    k: int
    wavelet_name: str
    dc_kernel: np.ndarray
    kernels: list[np.ndarray]
    _kernel_rfft2: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        stack = np.stack([self.dc_kernel] + list(self.kernels))
        self._kernel_rfft2 = np.fft.rfft2(stack, axes=(1, 2))


def derive_filter_bank(wavelet: WaveletSpec, n: int) -> AwtFilterBank:
    """Derive the 1-D bank: the impulse response at each scale.

    Each signal size has its own bank; derivation costs one naive full
    decomposition of the impulse.
    """
    n = int(n)
    if n < 2 or n % 2 != 0:
        raise InvalidLength(f"bank length must be even and >= 2, got {n}")
    delta = np.zeros(n)
    delta[0] = 1.0
    sp = awt_full_naive(delta, wavelet)
    return AwtFilterBank(
        n=n, k=sp.k, wavelet_name=wavelet.name, dc_filter=sp.dc, filters=sp.spectra
    )


def _hat_profile(x: np.ndarray) -> np.ndarray:
    """Scale-1 Haar kernel as a piecewise-linear function of a real argument.

    Knots (-2, -1, 0, 1, 2) take values (0, -0.25, 0.5, -0.25, 0); zero
    outside [-2, 2].
    """
    ax = np.abs(np.asarray(x, dtype=np.float64))
    inner = 0.5 - 0.75 * ax
    outer = 0.25 * (ax - 2.0)
    return np.where(ax <= 1.0, inner, np.where(ax <= 2.0, outer, 0.0))


def haar_closed_form_filter(n: int, s: int) -> np.ndarray:
    """Closed-form Haar detail kernel for power-of-two lengths.

    The scale-s kernel is the dyadic dilation
    ``y_s(j) = 2**-(s-1) * y_1(2**-(s-1) * j)`` of the scale-1 hat profile,
    wrapped circularly when the dilated support exceeds the length.
    """
    n = int(n)
    if n < 2 or n & (n - 1) != 0:
        raise InvalidLength(f"closed form requires a power-of-two length, got {n}")
    k = max_levels(n)
    s = int(s)
    if not 1 <= s <= k:
        raise InvalidScale(f"scale {s} outside 1..{k} for length {n}")
    half_support = 1 << s  # hat support is |j| <= 2**s
    j = np.arange(-half_support, half_support + 1)
    scale = 2.0 ** -(s - 1)
    vals = scale * _hat_profile(scale * j)
    kernel = np.zeros(n)
    np.add.at(kernel, j % n, vals)
    return kernel


def effective_support(kernel: np.ndarray, tol: float = 1e-12) -> int:
    """Circular extent of the taps with magnitude above working precision.

    The length of the shortest circular window containing every
    above-threshold tap (the kernel length minus the longest run of
    below-threshold taps); bounded by the kernel length.
    """
    mask = np.abs(np.asarray(kernel, dtype=np.float64)) > tol
    n = mask.size
    if not mask.any():
        return 0
    if mask.all():
        return n
    hits = np.flatnonzero(np.concatenate([mask, mask]))
    longest_gap = int(np.max(np.diff(hits))) - 1
    return n - longest_gap


def awt_fft(x, bank: AwtFilterBank) -> ScaleSpectra:
    """Decompose via circular convolution with the bank's kernels.

    Frequency-domain implementation, O(n log n) per scale; agrees with the
    naive averaging path to within accumulated rounding (1e-9).
    """
    arr = as_signal(x)
    if arr.size != bank.n:
        raise BankMismatch(f"signal length {arr.size} does not match bank length {bank.n}")
    spectrum = np.fft.rfft(arr)
    out = np.fft.irfft(bank._kernel_rfft * spectrum[np.newaxis, :], n=bank.n, axis=1)
    return ScaleSpectra(
        n=bank.n,
        k=bank.k,
        dc=out[0],
        spectra=[out[i] for i in range(1, bank.k + 1)],
        wavelet_name=bank.wavelet_name,
    )


def _cumulative_lowpass_kernels(wavelet: WaveletSpec, n: int, k: int) -> list[np.ndarray]:
    """Averaged approximation-projector kernels b_0..b_k for length n.

    b_0 is the impulse; b_j = b_{j-1} - (scale-j detail kernel), so b_j is
    the impulse response of the averaged projection onto the level-j
    approximation subspace.
    """
    bank = derive_filter_bank(wavelet, n)
    if k > bank.k:
        raise InvalidLength(f"length {n} supports only {bank.k} levels, need {k}")
    kernels = [np.zeros(n)]
    kernels[0][0] = 1.0
    for j in range(1, k + 1):
        kernels.append(kernels[j - 1] - bank.filters[j - 1])
    return kernels


def derive_filter_bank_2d(
    wavelet: WaveletSpec, height: int, width: int, levels: int | None = None
) -> FilterBank2D:
    """Derive the 2-D bank from the 1-D banks of each axis.

    The 2-D averaged projector onto the level-j approximation factors into
    an outer product of the 1-D averaged projectors, so the scale-s kernel
    is ``outer(b[s-1], b[s-1]) - outer(b[s], b[s])`` with per-axis
    cumulative low-pass kernels ``b``, and the DC kernel is
    ``outer(b[k], b[k])``.  Depth defaults to the maximum both axes
    support.
    """
    height, width = int(height), int(width)
    if height < 2 or width < 2 or height % 2 or width % 2:
        raise InvalidLength(f"bank dimensions must be even and >= 2, got {height}x{width}")
    kmax = min(max_levels(height), max_levels(width))
    k = kmax if levels is None else int(levels)
    if k < 1 or k > kmax:
        raise InvalidLength(
            f"levels={k} not supported for {height}x{width} (max {kmax})"
        )
    rows = _cumulative_lowpass_kernels(wavelet, height, k)
    cols = rows if width == height else _cumulative_lowpass_kernels(wavelet, width, k)
    kernels = [
        np.outer(rows[s - 1], cols[s - 1]) - np.outer(rows[s], cols[s])
        for s in range(1, k + 1)
    ]
    return FilterBank2D(
        height=height,
        width=width,
        k=k,
        wavelet_name=wavelet.name,
        dc_kernel=np.outer(rows[k], cols[k]),
        kernels=kernels,
    )


def awt2d_fft(img, bank: FilterBank2D) -> ScaleSpectra2D:
    """2-D decomposition via circular convolution with the bank's kernels."""
    arr = as_image(img)
    if arr.shape != (bank.height, bank.width):
        raise BankMismatch(
            f"image shape {arr.shape} does not match bank {bank.height}x{bank.width}"
        )
    spectrum = np.fft.rfft2(arr)
    out = np.fft.irfft2(
        bank._kernel_rfft2 * spectrum[np.newaxis, :, :],
        s=(bank.height, bank.width),
        axes=(1, 2),
    )
    return ScaleSpectra2D(
        height=bank.height,
        width=bank.width,
        k=bank.k,
        dc=out[0],
        spectra=[out[i] for i in range(1, bank.k + 1)],
        wavelet_name=bank.wavelet_name,
    )
