"""Filter-pair invariants, checked against the standard construction
equations: normalization, orthonormality to even translates, the
alternating-flip mirror relation, and vanishing moments."""

import numpy as np
import pytest

from awt import UnknownWavelet, wavelet_filters
from conftest import WAVELET_NAMES

# taps -> vanishing moments of the matching high-pass filter
EXPECTED_MOMENTS = {"haar": 1, "daub4": 2, "daub8": 4}


def test_haar_is_forced_by_normalization():
    w = wavelet_filters("haar")
    s = 1.0 / np.sqrt(2.0)
    assert np.allclose(w.lowpass, [s, s], atol=1e-15)
    assert np.allclose(w.highpass, [s, -s], atol=1e-15)


def test_daub4_closed_form():
    w = wavelet_filters("daub4")
    s3 = np.sqrt(3.0)
    expected = np.array([1 + s3, 3 + s3, 3 - s3, 1 - s3]) / (4 * np.sqrt(2.0))
    assert np.max(np.abs(w.lowpass - expected)) < 1e-15


@pytest.mark.parametrize("name", WAVELET_NAMES)
def test_lowpass_normalization(name):
    g = wavelet_filters(name).lowpass
    assert g.size >= 2 and g.size % 2 == 0
    assert abs(np.sum(g) - np.sqrt(2.0)) < 1e-12
    assert abs(np.sum(g * g) - 1.0) < 1e-12


@pytest.mark.parametrize("name", WAVELET_NAMES)
def test_orthonormal_to_even_translates(name):
    g = wavelet_filters(name).lowpass
    for m in range(1, g.size // 2):
        assert abs(np.dot(g[2 * m :], g[: -2 * m])) < 1e-12, f"shift {2 * m}"


@pytest.mark.parametrize("name", WAVELET_NAMES)
def test_highpass_is_alternating_flip(name):
    w = wavelet_filters(name)
    L = w.lowpass.size
    expected = np.array([(-1.0) ** i * w.lowpass[L - 1 - i] for i in range(L)])
    assert np.array_equal(w.highpass, expected)


@pytest.mark.parametrize("name", WAVELET_NAMES)
def test_vanishing_moments(name):
    # The standard construction oracle: an L-tap orthonormal filter of this
    # family annihilates polynomials up to degree L/2 - 1.
    h = wavelet_filters(name).highpass
    i = np.arange(h.size, dtype=np.float64)
    for p in range(EXPECTED_MOMENTS[name]):
        assert abs(np.dot(i**p, h)) < 1e-12, f"moment {p}"


def test_unknown_wavelet():
    with pytest.raises(UnknownWavelet):
        wavelet_filters("sym5")


def test_names_case_insensitive():
    assert np.array_equal(wavelet_filters("Haar").lowpass, wavelet_filters("haar").lowpass)
    assert wavelet_filters("DAUB8").name == "daub8"
