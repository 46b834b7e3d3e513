"""Pydantic request/response models for the decomposition service."""

from typing import Literal, Optional

from pydantic import BaseModel


class HealthResponse(BaseModel):
    status: str


class WaveletListResponse(BaseModel):
    wavelets: list[str]


class Residuals(BaseModel):
    reconstruction: float
    zero_mean: float
    dc_mean: float


class DecomposeRequest(BaseModel):
    samples: list[float]
    wavelet: str = "haar"
    method: Literal["fft", "naive"] = "fft"


class SpectraResponse(BaseModel):
    n: int
    k: int
    wavelet: str
    dc: list[float]
    spectra: list[list[float]]
    residuals: Residuals


class Decompose2DRequest(BaseModel):
    pixels: list[list[float]]
    wavelet: str = "haar"
    method: Literal["fft", "naive"] = "fft"
    levels: Optional[int] = None


class Spectra2DResponse(BaseModel):
    height: int
    width: int
    k: int
    wavelet: str
    dc: list[list[float]]
    spectra: list[list[list[float]]]
    residuals: Residuals


class FilterBankRequest(BaseModel):
    wavelet: str = "haar"
    n: int


class FilterBankResponse(BaseModel):
    n: int
    k: int
    wavelet: str
    dc_filter: list[float]
    filters: list[list[float]]


class FilterBank2DRequest(BaseModel):
    wavelet: str = "haar"
    height: int
    width: int
    levels: Optional[int] = None


class FilterBank2DResponse(BaseModel):
    height: int
    width: int
    k: int
    wavelet: str
    dc_kernel: list[list[float]]
    kernels: list[list[list[float]]]


class VerifyRequest(BaseModel):
    samples: Optional[list[float]] = None
    wavelet: str = "haar"
    tolerance: Optional[float] = None


class CheckLine(BaseModel):
    name: str
    residual: float
    tolerance: float
    passed: bool


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckLine]
    text: str


class ShiftVarianceRequest(BaseModel):
    samples: list[float]
    wavelet: str = "haar"


class ShiftVarianceResponse(BaseModel):
    wt: float
    awt: float


class SubstructureRequest(BaseModel):
    samples: list[float]
    start: int
    stop: int
    wavelet: str = "haar"


class SubstructureScale(BaseModel):
    scale: int
    window: tuple[int, int]
    match_error: float
    interior_match_error: float
    filter_support: int


class SubstructureResponse(BaseModel):
    results: list[SubstructureScale]


class ErrorBody(BaseModel):
    error: str
    detail: str
