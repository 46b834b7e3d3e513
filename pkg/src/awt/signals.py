"""Documented synthetic test inputs.

The original experiment data is not recoverable, so reproducible synthetic
stand-ins are pinned here: a 1-D signal made of two Gaussian bumps plus a
step, and a 2-D image with content at several scales.
"""

import numpy as np


def two_gaussians_step(n: int = 128) -> np.ndarray:
    """Two Gaussian bumps (centers 40 and 90, widths 5 and 8) plus a step.

    The default length-128 version is the package's standard 1-D test
    signal; the first bump is isolated enough to window out cleanly.
    """
    t = np.arange(n, dtype=np.float64)
    bump_a = np.exp(-((t - 40.0) ** 2) / (2.0 * 5.0**2))
    bump_b = 0.7 * np.exp(-((t - 90.0) ** 2) / (2.0 * 8.0**2))
    step = 0.4 * (t >= 64.0)
    return bump_a + bump_b + step


# Window covering the first bump of ``two_gaussians_step`` (half-open).
BUMP_WINDOW = (24, 56)


def synthetic_image(height: int = 128, width: int = 128) -> np.ndarray:
    """Deterministic grayscale image with structure at several scales.

    Two Gaussian blobs of different widths, a bright rectangle and a fine
    sinusoidal texture patch.
    """
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    scale = min(height, width)
    blob_small = 0.9 * np.exp(
        -(((yy - 0.3 * height) ** 2 + (xx - 0.28 * width) ** 2) / (2.0 * (0.05 * scale) ** 2))
    )
    blob_large = 0.6 * np.exp(
        -(((yy - 0.68 * height) ** 2 + (xx - 0.62 * width) ** 2) / (2.0 * (0.16 * scale) ** 2))
    )
    rect = 0.45 * ((yy < 0.22 * height) & (xx > 0.65 * width))
    texture = (
        0.12
        * np.sin(2.0 * np.pi * xx / 8.0)
        * np.sin(2.0 * np.pi * yy / 8.0)
        * (yy > 0.72 * height)
        * (xx < 0.35 * width)
    )
    return blob_small + blob_large + rect + texture
