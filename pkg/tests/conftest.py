import numpy as np
import pytest

from awt import wavelet_filters

WAVELET_NAMES = ("haar", "daub4", "daub8")


@pytest.fixture(params=WAVELET_NAMES)
def wavelet(request):
    return wavelet_filters(request.param)


def max_abs(a, b=None):
    a = np.asarray(a)
    if b is not None:
        a = a - np.asarray(b)
    return float(np.max(np.abs(a)))
