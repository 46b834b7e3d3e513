"""Quantified checks of the decomposition's defining properties.

``verify_transform`` bundles the invariant suite (shift invariance,
reconstruction, zero-mean spectra, DC mean, linearity, naive-vs-FFT
agreement) into a machine-checkable report.  ``wt_shift_variance``
quantifies how shift variant the plain decimated transform is, the
contrast the averaging removes.  ``substructure_experiment`` measures how
well the decomposition of an isolated substructure matches the windowed
decomposition of the full signal, per scale.
"""

from dataclasses import dataclass

import numpy as np

from .dwt import as_signal, dwt_periodic, max_levels, reconstruct_detail
from .errors import InvalidLength, InvalidWindow
from .filterbank import AwtFilterBank, awt_fft, derive_filter_bank, effective_support
from .reference import ScaleSpectra, awt_full_naive, inverse_awt
from .wavelets import WaveletSpec

DEFAULT_TOLERANCES = {
    "shift_invariance": 1e-10,
    "reconstruction": 1e-10,
    "zero_mean": 1e-10,
    "dc_mean": 1e-12,
    "linearity": 1e-10,
    "naive_vs_fft": 1e-9,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    """Residuals of the invariant suite; overall pass iff every check passes."""

    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [
            f"{c.name} residual={c.residual:.3e} tolerance={c.tolerance:.1e} "
            f"{'PASS' if c.passed else 'FAIL'}"
            for c in self.checks
        ]
        lines.append(f"overall {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _spectra_arrays(sp: ScaleSpectra) -> list[np.ndarray]:
    return [sp.dc, *sp.spectra]


def _max_abs_diff(a: ScaleSpectra, b: ScaleSpectra, shift: int = 0) -> float:
    worst = 0.0
    for va, vb in zip(_spectra_arrays(a), _spectra_arrays(b)):
        worst = max(worst, float(np.max(np.abs(va - np.roll(vb, shift)))))
    return worst


def verify_transform(
    x,
    wavelet: WaveletSpec,
    tolerance: float | None = None,
    bank: AwtFilterBank | None = None,
    prefix: str = "",
) -> VerificationReport:
    """Run the invariant suite on one signal and report residuals.

    ``tolerance`` overrides every per-check default with a single value;
    ``bank`` reuses a pre-derived filter bank.  ``prefix`` is prepended to
    check names when aggregating reports over several signals.
    """
    arr = as_signal(x)
    n = arr.size
    max_levels(n)  # propagates InvalidLength for odd lengths
    if bank is None:
        bank = derive_filter_bank(wavelet, n)

    base = awt_fft(arr, bank)

    shift_resid = 0.0
    for i in range(n):
        shifted = awt_fft(np.roll(arr, i), bank)
        shift_resid = max(shift_resid, _max_abs_diff(shifted, base, shift=i))

    recon_resid = float(np.max(np.abs(inverse_awt(base) - arr)))
    zero_mean_resid = max(float(abs(np.mean(v))) for v in base.spectra)
    dc_mean_resid = float(abs(np.mean(base.dc) - np.mean(arr)))

    rng = np.random.default_rng(0)
    a, b = rng.standard_normal(2)
    y = rng.standard_normal(n)
    combo = awt_fft(a * arr + b * y, bank)
    sp_y = awt_fft(y, bank)
    lin_resid = max(
        float(np.max(np.abs(vc - (a * vx + b * vy))))
        for vc, vx, vy in zip(
            _spectra_arrays(combo), _spectra_arrays(base), _spectra_arrays(sp_y)
        )
    )

    naive = awt_full_naive(arr, wavelet)
    naive_resid = _max_abs_diff(base, naive)

    residuals = {
        "shift_invariance": shift_resid,
        "reconstruction": recon_resid,
        "zero_mean": zero_mean_resid,
        "dc_mean": dc_mean_resid,
        "linearity": lin_resid,
        "naive_vs_fft": naive_resid,
    }
    checks = tuple(
        CheckResult(
            name=prefix + name,
            residual=res,
            tolerance=tol,
            passed=res <= tol,
        )
        for name, res in residuals.items()
        for tol in [DEFAULT_TOLERANCES[name] if tolerance is None else float(tolerance)]
    )
    return VerificationReport(checks=checks)


def wt_shift_variance(x, wavelet: WaveletSpec) -> float:
    """Shift variance of the plain decimated transform's scale-1 projection.

    Max over all circular shifts i of the aligned projection difference,
    normalized by the signal's max magnitude.  Nonzero in general: the
    decimated transform is shift variant.
    """
    arr = as_signal(x)
    n = arr.size
    if n & (n - 1) != 0:
        raise InvalidLength(f"shift-variance probe requires a power-of-two length, got {n}")
    denom = float(np.max(np.abs(arr)))
    if denom == 0.0:
        return 0.0
    base = reconstruct_detail(dwt_periodic(arr, wavelet, 1), wavelet, 1)
    worst = 0.0
    for i in range(n):
        proj = reconstruct_detail(dwt_periodic(np.roll(arr, i), wavelet, 1), wavelet, 1)
        worst = max(worst, float(np.max(np.abs(np.roll(proj, -i) - base))))
    return worst / denom


def awt_shift_variance(x, wavelet: WaveletSpec, bank: AwtFilterBank | None = None) -> float:
    """Same probe with the averaged transform's scale-1 spectrum: ~0."""
    arr = as_signal(x)
    n = arr.size
    denom = float(np.max(np.abs(arr)))
    if denom == 0.0:
        return 0.0
    if bank is None:
        bank = derive_filter_bank(wavelet, n)
    base = awt_fft(arr, bank).spectra[0]
    worst = 0.0
    for i in range(n):
        spec = awt_fft(np.roll(arr, i), bank).spectra[0]
        worst = max(worst, float(np.max(np.abs(np.roll(spec, -i) - base))))
    return worst / denom


@dataclass(frozen=True)
class SubstructureResult:
    """Per-scale agreement between a windowed substructure and the full signal.

    ``match_error`` is the relative L2 distance over the window between the
    substructure's spectrum and the full signal's spectrum;
    ``interior_match_error`` excludes a margin of half the filter support at
    each window edge (capped so the interior stays non-empty), which
    discounts the cut-off artifact.
    """

    scale: int
    window: tuple[int, int]
    match_error: float
    interior_match_error: float
    filter_support: int


def _relative_l2(diff: np.ndarray, ref: np.ndarray) -> float:
    ref_norm = float(np.linalg.norm(ref))
    if ref_norm == 0.0:
        return 0.0 if float(np.linalg.norm(diff)) == 0.0 else float("inf")
    return float(np.linalg.norm(diff)) / ref_norm


def substructure_experiment(
    x,
    window: tuple[int, int],
    wavelet: WaveletSpec,
    bank: AwtFilterBank | None = None,
) -> list[SubstructureResult]:
    """Decompose a windowed substructure and compare to the full signal.

    The substructure keeps the samples in ``window`` (half-open) and zeroes
    the rest.  Small scales have small, localized filter support, so they
    match well inside the window; large scales respond to the surrounding
    signal and match worse.
    """
    arr = as_signal(x)
    n = arr.size
    start, stop = int(window[0]), int(window[1])
    if not 0 <= start < stop <= n:
        raise InvalidWindow(f"window [{start}, {stop}) invalid for length {n}")
    if bank is None:
        bank = derive_filter_bank(wavelet, n)

    sub = np.zeros(n)
    sub[start:stop] = arr[start:stop]
    full_sp = awt_fft(arr, bank)
    sub_sp = awt_fft(sub, bank)

    width = stop - start
    results = []
    for s in range(1, bank.k + 1):
        support = effective_support(bank.filters[s - 1])
        margin = min(support // 2, (width - 1) // 2)
        full_win = full_sp.spectra[s - 1][start:stop]
        sub_win = sub_sp.spectra[s - 1][start:stop]
        inner = slice(start + margin, stop - margin)
        results.append(
            SubstructureResult(
                scale=s,
                window=(start, stop),
                match_error=_relative_l2(sub_win - full_win, full_win),
                interior_match_error=_relative_l2(
                    sub_sp.spectra[s - 1][inner] - full_sp.spectra[s - 1][inner],
                    full_sp.spectra[s - 1][inner],
                ),
                filter_support=support,
            )
        )
    return results
