"""FastAPI service wrapping the decomposition library.

The app owns a :class:`~awt.bankfile.BankCache`: filter banks are derived
once per (wavelet, size), kept in memory, and optionally persisted to a
cache directory (``AWT_BANK_CACHE`` environment variable, or the
``bank_cache_dir`` argument of :func:`create_app`).

Domain errors map to HTTP 422 with a stable ``error`` code; a corrupt bank
cache file maps to HTTP 500 with code ``CorruptBank``.
"""

import os

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..analysis import (
    awt_shift_variance,
    substructure_experiment,
    verify_transform,
    wt_shift_variance,
)
from ..bankfile import BankCache
from ..errors import AwtError, CorruptBank
from ..reference import (
    ScaleSpectra,
    ScaleSpectra2D,
    awt2d_full_naive,
    awt_full_naive,
    inverse_awt,
    inverse_awt2d,
)
from ..filterbank import awt2d_fft, awt_fft
from ..signals import two_gaussians_step
from ..wavelets import SUPPORTED_WAVELETS, wavelet_filters
from . import schemas


def _residuals_1d(sp: ScaleSpectra, x: np.ndarray) -> schemas.Residuals:
    return schemas.Residuals(
        reconstruction=float(np.max(np.abs(inverse_awt(sp) - x))),
        zero_mean=max(float(abs(np.mean(v))) for v in sp.spectra),
        dc_mean=float(abs(np.mean(sp.dc) - np.mean(x))),
    )


def _residuals_2d(sp: ScaleSpectra2D, img: np.ndarray) -> schemas.Residuals:
    return schemas.Residuals(
        reconstruction=float(np.max(np.abs(inverse_awt2d(sp) - img))),
        zero_mean=max(float(abs(np.mean(m))) for m in sp.spectra),
        dc_mean=float(abs(np.mean(sp.dc) - np.mean(img))),
    )


def _verify_suite(wavelet, tolerance, cache: BankCache):
    """Built-in verification inputs used when no signal is supplied."""
    rng = np.random.default_rng(7)
    alternating = np.ones(64)
    alternating[1::2] = -1.0
    suite = {
        "synthetic": two_gaussians_step(128),
        "constant": np.full(64, 0.7),
        "alternating": alternating,
        "random": rng.standard_normal(64),
    }
    checks = []
    for label, sig in suite.items():
        bank = cache.bank_1d(wavelet, sig.size)
        report = verify_transform(sig, wavelet, tolerance=tolerance, bank=bank, prefix=f"{label}.")
        checks.extend(report.checks)
    return checks


def create_app(bank_cache_dir: str | os.PathLike | None = None) -> FastAPI:
    """Build the service; ``bank_cache_dir`` enables the on-disk bank cache."""
    app = FastAPI(title="awt", version=__version__)
    cache = BankCache(bank_cache_dir)
    app.state.bank_cache = cache

    @app.exception_handler(AwtError)
    async def _awt_error(request, exc: AwtError):
        status = 500 if isinstance(exc, CorruptBank) else 422
        return JSONResponse(
            status_code=status,
            content=schemas.ErrorBody(error=exc.code, detail=str(exc)).model_dump(),
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok")

    @app.get("/wavelets", response_model=schemas.WaveletListResponse)
    def wavelets():
        return schemas.WaveletListResponse(wavelets=list(SUPPORTED_WAVELETS))

    @app.post("/decompose", response_model=schemas.SpectraResponse)
    def decompose(req: schemas.DecomposeRequest):
        wavelet = wavelet_filters(req.wavelet)
        x = np.asarray(req.samples, dtype=np.float64)
        if req.method == "naive":
            sp = awt_full_naive(x, wavelet)
        else:
            sp = awt_fft(x, cache.bank_1d(wavelet, x.size))
        return schemas.SpectraResponse(
            n=sp.n,
            k=sp.k,
            wavelet=sp.wavelet_name,
            dc=sp.dc.tolist(),
            spectra=[v.tolist() for v in sp.spectra],
            residuals=_residuals_1d(sp, np.asarray(req.samples, dtype=np.float64)),
        )

    @app.post("/decompose2d", response_model=schemas.Spectra2DResponse)
    def decompose2d(req: schemas.Decompose2DRequest):
        wavelet = wavelet_filters(req.wavelet)
        img = np.asarray(req.pixels, dtype=np.float64)
        if req.method == "naive":
            sp = awt2d_full_naive(img, wavelet, levels=req.levels)
        else:
            bank = cache.bank_2d(wavelet, img.shape[0], img.shape[1], levels=req.levels)
            sp = awt2d_fft(img, bank)
        return schemas.Spectra2DResponse(
            height=sp.height,
            width=sp.width,
            k=sp.k,
            wavelet=sp.wavelet_name,
            dc=sp.dc.tolist(),
            spectra=[m.tolist() for m in sp.spectra],
            residuals=_residuals_2d(sp, img),
        )

    @app.post("/filters", response_model=schemas.FilterBankResponse)
    def filters(req: schemas.FilterBankRequest):
        wavelet = wavelet_filters(req.wavelet)
        bank = cache.bank_1d(wavelet, req.n)
        return schemas.FilterBankResponse(
            n=bank.n,
            k=bank.k,
            wavelet=bank.wavelet_name,
            dc_filter=bank.dc_filter.tolist(),
            filters=[f.tolist() for f in bank.filters],
        )

    @app.post("/filters2d", response_model=schemas.FilterBank2DResponse)
    def filters2d(req: schemas.FilterBank2DRequest):
        wavelet = wavelet_filters(req.wavelet)
        bank = cache.bank_2d(wavelet, req.height, req.width, levels=req.levels)
        return schemas.FilterBank2DResponse(
            height=bank.height,
            width=bank.width,
            k=bank.k,
            wavelet=bank.wavelet_name,
            dc_kernel=bank.dc_kernel.tolist(),
            kernels=[m.tolist() for m in bank.kernels],
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        wavelet = wavelet_filters(req.wavelet)
        if req.samples is None:
            checks = _verify_suite(wavelet, req.tolerance, cache)
        else:
            x = np.asarray(req.samples, dtype=np.float64)
            bank = cache.bank_1d(wavelet, x.size)
            checks = verify_transform(x, wavelet, tolerance=req.tolerance, bank=bank).checks
        passed = all(c.passed for c in checks)
        lines = [
            f"{c.name} residual={c.residual:.3e} tolerance={c.tolerance:.1e} "
            f"{'PASS' if c.passed else 'FAIL'}"
            for c in checks
        ]
        lines.append(f"overall {'PASS' if passed else 'FAIL'}")
        return schemas.VerifyResponse(
            passed=passed,
            checks=[
                schemas.CheckLine(
                    name=c.name, residual=c.residual, tolerance=c.tolerance, passed=c.passed
                )
                for c in checks
            ],
            text="\n".join(lines),
        )

    @app.post("/shift-variance", response_model=schemas.ShiftVarianceResponse)
    def shift_variance(req: schemas.ShiftVarianceRequest):
        wavelet = wavelet_filters(req.wavelet)
        x = np.asarray(req.samples, dtype=np.float64)
        bank = cache.bank_1d(wavelet, x.size)
        return schemas.ShiftVarianceResponse(
            wt=wt_shift_variance(x, wavelet),
            awt=awt_shift_variance(x, wavelet, bank=bank),
        )

    @app.post("/substructure", response_model=schemas.SubstructureResponse)
    def substructure(req: schemas.SubstructureRequest):
        wavelet = wavelet_filters(req.wavelet)
        x = np.asarray(req.samples, dtype=np.float64)
        bank = cache.bank_1d(wavelet, x.size)
        results = substructure_experiment(x, (req.start, req.stop), wavelet, bank=bank)
        return schemas.SubstructureResponse(
            results=[
                schemas.SubstructureScale(
                    scale=r.scale,
                    window=r.window,
                    match_error=r.match_error,
                    interior_match_error=r.interior_match_error,
                    filter_support=r.filter_support,
                )
                for r in results
            ]
        )

    return app


app = create_app(os.environ.get("AWT_BANK_CACHE"))
