"""Periodized transform: frozen small cases, round trips, energy and
projection identities, and a matrix oracle built independently from unit
vectors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awt import (
    InvalidCoeffs,
    InvalidLength,
    InvalidLevels,
    InvalidScale,
    WaveletCoeffs,
    dwt_periodic,
    idwt_periodic,
    max_levels,
    reconstruct_approx,
    reconstruct_detail,
    wavelet_filters,
)
from conftest import max_abs

INV_SQRT2 = 1.0 / np.sqrt(2.0)


class TestMaxLevels:
    def test_powers_of_two(self):
        assert max_levels(128) == 7
        assert max_levels(4) == 2
        assert max_levels(2) == 1

    def test_even_non_power(self):
        assert max_levels(12) == 2
        assert max_levels(6) == 1

    @pytest.mark.parametrize("n", [7, 1, 0, -2, 3])
    def test_rejects(self, n):
        with pytest.raises(InvalidLength):
            max_levels(n)


class TestForward:
    def test_delta_haar_two_levels(self):
        # Hand recursion of the two-tap butterfly.
        c = dwt_periodic([1.0, 0.0, 0.0, 0.0], wavelet_filters("haar"), 2)
        assert max_abs(c.details[0], [INV_SQRT2, 0.0]) < 1e-15
        assert max_abs(c.details[1], [0.5]) < 1e-15
        assert max_abs(c.approx, [0.5]) < 1e-15

    def test_constant_signal(self, wavelet):
        n, k, c0 = 16, 4, 1.7
        coeffs = dwt_periodic(np.full(n, c0), wavelet, k)
        for d in coeffs.details:
            assert max_abs(d) < 1e-12
        assert max_abs(coeffs.approx, c0 * np.sqrt(2.0**k)) < 1e-12

    def test_linearity(self, wavelet):
        rng = np.random.default_rng(3)
        x, y = rng.standard_normal((2, 32))
        a, b = 1.3, -0.4
        cx = dwt_periodic(x, wavelet)
        cy = dwt_periodic(y, wavelet)
        cc = dwt_periodic(a * x + b * y, wavelet)
        for dc, dx, dy in zip(cc.details, cx.details, cy.details):
            assert max_abs(dc, a * dx + b * dy) < 1e-12
        assert max_abs(cc.approx, a * cx.approx + b * cy.approx) < 1e-12

    def test_energy_conservation(self, wavelet):
        rng = np.random.default_rng(4)
        x = rng.standard_normal(64)
        c = dwt_periodic(x, wavelet)
        energy = sum(float(np.sum(d * d)) for d in c.details) + float(
            np.sum(c.approx * c.approx)
        )
        assert abs(energy - np.sum(x * x)) < 1e-10

    def test_rejects_bad_levels(self):
        w = wavelet_filters("haar")
        with pytest.raises(InvalidLevels):
            dwt_periodic(np.zeros(8), w, 4)
        with pytest.raises(InvalidLevels):
            dwt_periodic(np.zeros(8), w, 0)
        with pytest.raises(InvalidLength):
            dwt_periodic(np.zeros(9), w)


class TestRoundTrip:
    @pytest.mark.parametrize("n", [2**j for j in range(2, 11)])
    def test_powers_of_two(self, wavelet, n):
        rng = np.random.default_rng(n)
        x = rng.standard_normal(n)
        assert max_abs(idwt_periodic(dwt_periodic(x, wavelet), wavelet), x) < 1e-12

    def test_non_power_of_two(self, wavelet):
        rng = np.random.default_rng(5)
        x = rng.standard_normal(12)
        c = dwt_periodic(x, wavelet)
        assert c.k == 2
        assert max_abs(idwt_periodic(c, wavelet), x) < 1e-12

    @given(st.integers(0, 2**32 - 1), st.sampled_from([4, 8, 16, 32]))
    @settings(max_examples=30, deadline=None)
    def test_random_property(self, seed, n):
        rng = np.random.default_rng(seed)
        x = rng.uniform(-100, 100, n)
        for name in ("haar", "daub8"):
            w = wavelet_filters(name)
            assert max_abs(idwt_periodic(dwt_periodic(x, w), w), x) < 1e-10 * max(
                1.0, max_abs(x)
            )

    def test_zero_coeffs_give_zero_signal(self, wavelet):
        c = dwt_periodic(np.zeros(16), wavelet, 3)
        assert max_abs(idwt_periodic(c, wavelet)) == 0.0

    def test_rejects_inconsistent_shapes(self):
        w = wavelet_filters("haar")
        c = dwt_periodic(np.arange(8.0), w, 2)
        broken = WaveletCoeffs(c.n, c.k, [c.details[0][:1], c.details[1]], c.approx)
        with pytest.raises(InvalidCoeffs):
            idwt_periodic(broken, w)
        with pytest.raises(InvalidCoeffs):
            idwt_periodic(WaveletCoeffs(8, 1, c.details, c.approx), w)


def analysis_matrix(wavelet, n, k):
    """Analysis operator as a matrix, column by column from unit vectors."""
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        c = dwt_periodic(e, wavelet, k)
        cols.append(np.concatenate(c.details + [c.approx]))
    return np.array(cols).T


class TestProjections:
    def test_delta_haar_scale1(self):
        w = wavelet_filters("haar")
        c = dwt_periodic([1.0, 0.0, 0.0, 0.0], w, 2)
        assert max_abs(reconstruct_detail(c, w, 1), [0.5, -0.5, 0.0, 0.0]) < 1e-15

    def test_delta_haar_scale2(self):
        w = wavelet_filters("haar")
        c = dwt_periodic([1.0, 0.0, 0.0, 0.0], w, 2)
        assert max_abs(reconstruct_detail(c, w, 2), [0.25, 0.25, -0.25, -0.25]) < 1e-15

    def test_delta_haar_approx_is_mean(self):
        w = wavelet_filters("haar")
        c = dwt_periodic([1.0, 0.0, 0.0, 0.0], w, 2)
        assert max_abs(reconstruct_approx(c, w), 0.25) < 1e-15

    def test_constant_details_vanish(self, wavelet):
        c = dwt_periodic(np.full(16, 2.5), wavelet, 4)
        for s in range(1, 5):
            assert max_abs(reconstruct_detail(c, wavelet, s)) < 1e-12
        assert max_abs(reconstruct_approx(c, wavelet), 2.5) < 1e-12

    def test_haar_level1_approx_is_pairwise_mean(self):
        rng = np.random.default_rng(6)
        x = rng.standard_normal(8)
        w = wavelet_filters("haar")
        rec = reconstruct_approx(dwt_periodic(x, w, 1), w)
        pairs = np.repeat((x[0::2] + x[1::2]) / 2.0, 2)
        assert max_abs(rec, pairs) < 1e-12

    def test_approx_keeps_mean(self, wavelet):
        rng = np.random.default_rng(7)
        x = rng.standard_normal(32)
        rec = reconstruct_approx(dwt_periodic(x, wavelet), wavelet)
        assert abs(np.mean(rec) - np.mean(x)) < 1e-12

    def test_matrix_oracle(self, wavelet):
        # Independent route: analysis matrix from unit vectors must be
        # orthogonal, and each projection must equal W.T @ (row selection) @ W.
        n, k = 16, 3
        W = analysis_matrix(wavelet, n, k)
        assert max_abs(W.T @ W, np.eye(n)) < 1e-12
        rng = np.random.default_rng(8)
        x = rng.standard_normal(n)
        c = dwt_periodic(x, wavelet, k)
        offsets = np.cumsum([0] + [n >> (j + 1) for j in range(k)])
        for s in range(1, k + 1):
            sel = np.zeros(n)
            sel[offsets[s - 1] : offsets[s]] = 1.0
            expected = W.T @ (sel * (W @ x))
            assert max_abs(reconstruct_detail(c, wavelet, s), expected) < 1e-12
        sel = np.zeros(n)
        sel[offsets[-1] :] = 1.0
        assert max_abs(reconstruct_approx(c, wavelet), W.T @ (sel * (W @ x))) < 1e-12

    def test_projections_sum_to_signal(self, wavelet):
        rng = np.random.default_rng(9)
        x = rng.standard_normal(64)
        c = dwt_periodic(x, wavelet)
        total = reconstruct_approx(c, wavelet)
        for s in range(1, c.k + 1):
            total = total + reconstruct_detail(c, wavelet, s)
        assert max_abs(total, x) < 1e-10

    def test_projections_orthogonal(self, wavelet):
        rng = np.random.default_rng(10)
        x = rng.standard_normal(32)
        c = dwt_periodic(x, wavelet)
        projections = [reconstruct_approx(c, wavelet)] + [
            reconstruct_detail(c, wavelet, s) for s in range(1, c.k + 1)
        ]
        bound = 1e-10 * float(np.sum(x * x))
        for i in range(len(projections)):
            for j in range(i + 1, len(projections)):
                assert abs(np.dot(projections[i], projections[j])) < bound

    def test_projection_energies_sum(self, wavelet):
        rng = np.random.default_rng(11)
        x = rng.standard_normal(32)
        c = dwt_periodic(x, wavelet)
        projections = [reconstruct_approx(c, wavelet)] + [
            reconstruct_detail(c, wavelet, s) for s in range(1, c.k + 1)
        ]
        energy = sum(float(np.sum(p * p)) for p in projections)
        assert abs(energy - np.sum(x * x)) < 1e-10

    def test_scale_out_of_range(self):
        w = wavelet_filters("haar")
        c = dwt_periodic(np.arange(8.0), w, 2)
        for s in (0, 3, -1):
            with pytest.raises(InvalidScale):
                reconstruct_detail(c, w, s)
